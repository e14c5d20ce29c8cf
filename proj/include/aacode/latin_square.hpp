// latin_square.hpp -- the mixing function phi with bijective sections
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "aacode/code.hpp"

namespace aacode {

/// A q x q table over 0..q-1 whose rows and columns are permutations.
/// phi(a, b) = table[a][b]; the two section inverses are precomputed.
class LatinSquare {
   public:
    LatinSquare(int q, std::vector<Symbol> table) : q_(q), table_(std::move(table)) {
        if (q < 2 || q > 256) throw std::invalid_argument("latin square order must be 2..256");
        if (table_.size() != static_cast<std::size_t>(q) * static_cast<std::size_t>(q))
            throw std::invalid_argument("latin square table must have q*q entries");
        inv_first_.assign(table_.size(), 0);
        inv_second_.assign(table_.size(), 0);
        std::vector<char> seen(static_cast<std::size_t>(q));
        for (int a = 0; a < q; ++a) {  // rows
            std::fill(seen.begin(), seen.end(), 0);
            for (int b = 0; b < q; ++b) {
                const Symbol c = at(a, b);
                if (c >= q) throw std::invalid_argument("latin square entry out of range");
                if (seen[c]) throw std::invalid_argument("row " + std::to_string(a) + " is not a permutation");
                seen[c] = 1;
                inv_first_[idx(a, c)] = static_cast<Symbol>(b);
            }
        }
        for (int b = 0; b < q; ++b) {  // columns
            std::fill(seen.begin(), seen.end(), 0);
            for (int a = 0; a < q; ++a) {
                const Symbol c = at(a, b);
                if (seen[c]) throw std::invalid_argument("column " + std::to_string(b) + " is not a permutation");
                seen[c] = 1;
                inv_second_[idx(b, c)] = static_cast<Symbol>(a);
            }
        }
    }

    /// phi(a, b) = a + b mod q, the simplest witness of the section property.
    static LatinSquare modular(int q) {
        std::vector<Symbol> t(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) t[static_cast<std::size_t>(a * q + b)] = static_cast<Symbol>((a + b) % q);
        return LatinSquare(q, std::move(t));
    }

    int q() const { return q_; }

    /// phi(a, b).
    Symbol apply(Symbol a, Symbol b) const {
        check(a);
        check(b);
        return at(a, b);
    }

    /// The b with phi(a, b) = c.
    Symbol inv_first(Symbol a, Symbol c) const {
        check(a);
        check(c);
        return inv_first_[idx(a, c)];
    }

    /// The a with phi(a, b) = c.
    Symbol inv_second(Symbol b, Symbol c) const {
        check(b);
        check(c);
        return inv_second_[idx(b, c)];
    }

   private:
    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * q_ + static_cast<std::size_t>(b); }
    Symbol at(int a, int b) const { return table_[idx(a, b)]; }
    void check(Symbol s) const {
        if (s >= q_) throw std::out_of_range("symbol " + std::to_string(int(s)) + " outside 0.." + std::to_string(q_ - 1));
    }

    int q_;
    std::vector<Symbol> table_;
    std::vector<Symbol> inv_first_;   // [a][c] -> b
    std::vector<Symbol> inv_second_;  // [b][c] -> a
};

}  // namespace aacode
