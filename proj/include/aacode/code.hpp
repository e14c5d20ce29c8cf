// code.hpp -- block codes over finite alphabets: puncturing, exact rank,
// almost-affine verification, supports, shortening, associated matroid.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aacode/rank_function.hpp"
#include "aacode/subsets.hpp"

namespace aacode {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

/// Raised when a cardinality that must be a power of q is not one.
struct NotAlmostAffineError : std::runtime_error {
    Subset witness;
    NotAlmostAffineError(const std::string& msg, Subset w) : std::runtime_error(msg), witness(w) {}
};

/// Raised instead of attempting an enumeration past the feasibility guard.
struct InfeasibleSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symbols are the integers 0..q-1; the theory only ever uses |A|.
class Alphabet {
   public:
    explicit Alphabet(int q) : q_(q) {
        if (q < 2) throw std::invalid_argument("alphabet size must be at least 2");
        if (q > 256) throw std::invalid_argument("alphabet size above 256 is not supported");
    }
    int size() const { return q_; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;

   private:
    int q_;
};

namespace detail {

/// q^e, or nullopt on overflow past 2^62.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t q, int e) {
    std::uint64_t v = 1;
    for (int i = 0; i < e; ++i) {
        if (v > (std::uint64_t{1} << 62) / q) return std::nullopt;
        v *= q;
    }
    return v;
}

/// log_q(count) when count is an exact power of q, else nullopt.
inline std::optional<int> exact_log(std::uint64_t count, std::uint64_t q) {
    int k = 0;
    while (count % q == 0) {
        count /= q;
        ++k;
    }
    return count == 1 ? std::optional<int>(k) : std::nullopt;
}

}  // namespace detail

/// A nonempty set of distinct length-n words, stored row-major in canonical
/// lexicographic order. Immutable after construction.
class BlockCode {
   public:
    /// Strict factory: duplicate words are rejected.
    static BlockCode from_words(Alphabet alphabet, int n, const std::vector<Word>& words) {
        std::vector<Symbol> flat;
        flat.reserve(words.size() * static_cast<std::size_t>(n));
        for (const Word& w : words) {
            if (static_cast<int>(w.size()) != n)
                throw std::invalid_argument("codeword length " + std::to_string(w.size()) + " != n = " +
                                            std::to_string(n));
            flat.insert(flat.end(), w.begin(), w.end());
        }
        return BlockCode(alphabet, n, std::move(flat), /*collapse=*/false);
    }

    /// Set-image factory: duplicates collapse silently (projections, unions).
    static BlockCode from_word_multiset(Alphabet alphabet, int n, std::vector<Symbol> flat) {
        return BlockCode(alphabet, n, std::move(flat), /*collapse=*/true);
    }

    int q() const { return alphabet_.size(); }
    const Alphabet& alphabet() const { return alphabet_; }
    int length() const { return length_; }
    std::size_t size() const { return length_ == 0 ? 1 : flat_.size() / static_cast<std::size_t>(length_); }

    std::span<const Symbol> word(std::size_t i) const {
        return {flat_.data() + i * static_cast<std::size_t>(length_), static_cast<std::size_t>(length_)};
    }

    bool contains(std::span<const Symbol> w) const { return find(w).has_value(); }

    /// Index of w in canonical order, if present.
    std::optional<std::size_t> find(std::span<const Symbol> w) const {
        if (static_cast<int>(w.size()) != length_) return std::nullopt;
        if (length_ == 0) return 0;
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            const std::size_t mid = lo + (hi - lo) / 2;
            const auto row = word(mid);
            if (std::lexicographical_compare(row.begin(), row.end(), w.begin(), w.end()))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < size() && std::equal(w.begin(), w.end(), word(lo).begin())) return lo;
        return std::nullopt;
    }

    const std::vector<Symbol>& flat() const { return flat_; }

    friend bool operator==(const BlockCode&, const BlockCode&) = default;

   private:
    BlockCode(Alphabet alphabet, int n, std::vector<Symbol> flat, bool collapse)
        : alphabet_(alphabet), length_(n), flat_(std::move(flat)) {
        if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("code length must be 0..20");
        if (length_ == 0) {
            flat_.clear();  // the single empty word
            return;
        }
        if (flat_.empty() || flat_.size() % static_cast<std::size_t>(length_) != 0)
            throw std::invalid_argument("code must contain at least one word of length n");
        for (Symbol s : flat_)
            if (s >= alphabet_.size())
                throw std::invalid_argument("symbol " + std::to_string(int(s)) + " outside alphabet 0.." +
                                            std::to_string(alphabet_.size() - 1));
        canonicalize(collapse);
    }

    void canonicalize(bool collapse) {
        const std::size_t count = flat_.size() / static_cast<std::size_t>(length_);
        const auto packed = detail::checked_pow(static_cast<std::uint64_t>(q()), length_);
        if (packed) {
            std::vector<std::uint64_t> keys(count);
            for (std::size_t i = 0; i < count; ++i) {
                std::uint64_t key = 0;
                for (int j = 0; j < length_; ++j)
                    key = key * static_cast<std::uint64_t>(q()) + flat_[i * length_ + j];
                keys[i] = key;
            }
            std::sort(keys.begin(), keys.end());
            const auto last = std::unique(keys.begin(), keys.end());
            if (!collapse && last != keys.end()) throw std::invalid_argument("duplicate codeword");
            keys.erase(last, keys.end());
            std::vector<Symbol> out(keys.size() * static_cast<std::size_t>(length_));
            for (std::size_t i = 0; i < keys.size(); ++i) {
                std::uint64_t key = keys[i];
                for (int j = length_ - 1; j >= 0; --j) {
                    out[i * length_ + j] = static_cast<Symbol>(key % q());
                    key /= q();
                }
            }
            flat_ = std::move(out);
            return;
        }
        // Alphabet too large to pack; sort row indices lexicographically.
        std::vector<std::size_t> idx(count);
        for (std::size_t i = 0; i < count; ++i) idx[i] = i;
        const auto row_less = [&](std::size_t a, std::size_t b) {
            return std::lexicographical_compare(flat_.begin() + a * length_, flat_.begin() + (a + 1) * length_,
                                                flat_.begin() + b * length_, flat_.begin() + (b + 1) * length_);
        };
        std::sort(idx.begin(), idx.end(), row_less);
        std::vector<Symbol> out;
        out.reserve(flat_.size());
        for (std::size_t i = 0; i < count; ++i) {
            if (i > 0 && !row_less(idx[i - 1], idx[i])) {
                if (!collapse) throw std::invalid_argument("duplicate codeword");
                continue;
            }
            out.insert(out.end(), flat_.begin() + idx[i] * length_, flat_.begin() + (idx[i] + 1) * length_);
        }
        flat_ = std::move(out);
    }

    Alphabet alphabet_;
    int length_;
    std::vector<Symbol> flat_;
};

struct AffineReport {
    bool is_almost_affine = false;
    std::optional<int> dimension;   // k with |C| = q^k, present iff almost affine
    std::optional<Subset> witness;  // first X with |C_X| not a power of q
};

namespace detail {

/// Number of distinct projections of C onto the coordinates of X.
inline std::uint64_t distinct_projection_count(const BlockCode& code, Subset x) {
    if (x == 0) return 1;
    const std::vector<int> coords = elements(x);
    const std::uint64_t q = static_cast<std::uint64_t>(code.q());
    const auto universe = checked_pow(q, static_cast<int>(coords.size()));
    const std::size_t count = code.size();

    if (universe && *universe <= (std::uint64_t{1} << 23)) {
        // Small projected universe: flat presence array, O(1) per word.
        std::vector<char> seen(static_cast<std::size_t>(*universe), 0);
        std::uint64_t distinct = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const auto w = code.word(i);
            std::uint64_t key = 0;
            for (int c : coords) key = key * q + w[static_cast<std::size_t>(c)];
            if (!seen[key]) {
                seen[key] = 1;
                ++distinct;
            }
        }
        return distinct;
    }
    if (universe) {
        std::vector<std::uint64_t> keys(count);
        for (std::size_t i = 0; i < count; ++i) {
            const auto w = code.word(i);
            std::uint64_t key = 0;
            for (int c : coords) key = key * q + w[static_cast<std::size_t>(c)];
            keys[i] = key;
        }
        std::sort(keys.begin(), keys.end());
        return static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    // Unpackable alphabet: compare projected tuples directly.
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    const auto proj_less = [&](std::size_t a, std::size_t b) {
        const auto wa = code.word(a), wb = code.word(b);
        for (int c : coords) {
            if (wa[static_cast<std::size_t>(c)] != wb[static_cast<std::size_t>(c)])
                return wa[static_cast<std::size_t>(c)] < wb[static_cast<std::size_t>(c)];
        }
        return false;
    };
    const auto proj_eq = [&](std::size_t a, std::size_t b) { return !proj_less(a, b) && !proj_less(b, a); };
    std::sort(idx.begin(), idx.end(), proj_less);
    std::uint64_t distinct = count ? 1 : 0;
    for (std::size_t i = 1; i < count; ++i)
        if (!proj_eq(idx[i - 1], idx[i])) ++distinct;
    return distinct;
}

}  // namespace detail

/// Projection of C onto the coordinates of X (duplicates collapsed); a code
/// of length |X|, coordinates kept in increasing original order.
inline BlockCode puncture(const BlockCode& code, Subset x) {
    check_subset(x, code.length(), "puncture");
    const std::vector<int> coords = elements(x);
    std::vector<Symbol> flat;
    flat.reserve(code.size() * coords.size());
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto w = code.word(i);
        for (int c : coords) flat.push_back(w[static_cast<std::size_t>(c)]);
    }
    return BlockCode::from_word_multiset(code.alphabet(), static_cast<int>(coords.size()), std::move(flat));
}

/// r(X) = log_q |C_X| as an exact integer; exact integer arithmetic only.
inline int rank(const BlockCode& code, Subset x) {
    check_subset(x, code.length(), "rank");
    const std::uint64_t count = detail::distinct_projection_count(code, x);
    const auto k = detail::exact_log(count, static_cast<std::uint64_t>(code.q()));
    if (!k)
        throw NotAlmostAffineError("|C_X| = " + std::to_string(count) + " is not a power of " +
                                       std::to_string(code.q()) + " at X = " + format_subset(x),
                                   x);
    return *k;
}

/// Scans subsets in canonical order (size, then lexicographic) and reports
/// the first X whose projection count is not a power of q. The global
/// |C| = q^k precheck reports the empty set as its witness.
inline AffineReport verify_almost_affine(const BlockCode& code) {
    const auto dim = detail::exact_log(code.size(), static_cast<std::uint64_t>(code.q()));
    if (!dim) return {false, std::nullopt, Subset{0}};
    for (Subset x : canonical_subset_order(code.length())) {
        const auto count = detail::distinct_projection_count(code, x);
        if (!detail::exact_log(count, static_cast<std::uint64_t>(code.q()))) return {false, std::nullopt, x};
    }
    return {true, *dim, std::nullopt};
}

/// k = log_q |C|.
inline int dimension_of(const BlockCode& code) {
    const auto k = detail::exact_log(code.size(), static_cast<std::uint64_t>(code.q()));
    if (!k)
        throw NotAlmostAffineError("|C| = " + std::to_string(code.size()) + " is not a power of " +
                                       std::to_string(code.q()),
                                   0);
    return *k;
}

/// Supp(C, c) = union over w in C of {i : w_i != c_i}. Independent of the
/// choice of c in C; equality with the lexicographically smallest codeword's
/// support is asserted.
inline Subset support(const BlockCode& code, std::span<const Symbol> c) {
    if (!code.contains(c)) throw std::invalid_argument("support: word not in code");
    const auto support_vs = [&](std::span<const Symbol> ref) {
        Subset s = 0;
        for (std::size_t i = 0; i < code.size(); ++i) {
            const auto w = code.word(i);
            for (int j = 0; j < code.length(); ++j)
                if (w[static_cast<std::size_t>(j)] != ref[static_cast<std::size_t>(j)]) s = with_element(s, j);
        }
        return s;
    };
    const Subset result = support_vs(c);
    if (result != support_vs(code.word(0)))
        throw std::logic_error("support depends on the chosen codeword");  // cannot happen: c is in C
    return result;
}

/// C(X, c) = {w in C : w_X = c_X} for c in C; an almost affine subcode of
/// size q^{k - r(X)} whose rank function is Y -> r(X u Y) - r(X).
inline BlockCode shorten(const BlockCode& code, Subset x, std::span<const Symbol> c) {
    check_subset(x, code.length(), "shorten");
    if (!code.contains(c)) throw std::invalid_argument("shorten: word not in code");
    const std::vector<int> coords = elements(x);
    std::vector<Symbol> flat;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto w = code.word(i);
        bool match = true;
        for (int j : coords)
            if (w[static_cast<std::size_t>(j)] != c[static_cast<std::size_t>(j)]) {
                match = false;
                break;
            }
        if (match) flat.insert(flat.end(), w.begin(), w.end());
    }
    return BlockCode::from_word_multiset(code.alphabet(), code.length(), std::move(flat));
}

/// Unsafe variant for arbitrary c: the result may be empty and, when c is
/// not in C, need not be an almost affine code. Returned as a plain word
/// list because BlockCode requires nonemptiness.
inline std::vector<Word> shorten_unchecked(const BlockCode& code, Subset x, std::span<const Symbol> c) {
    check_subset(x, code.length(), "shorten");
    if (static_cast<int>(c.size()) != code.length()) throw std::invalid_argument("shorten: word length != n");
    const std::vector<int> coords = elements(x);
    std::vector<Word> out;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto w = code.word(i);
        bool match = true;
        for (int j : coords)
            if (w[static_cast<std::size_t>(j)] != c[static_cast<std::size_t>(j)]) {
                match = false;
                break;
            }
        if (match) out.emplace_back(w.begin(), w.end());
    }
    return out;
}

/// Tabulates r(X) = log_q |C_X| over all subsets; the matroid M_C.
inline RankFunction matroid_of(const BlockCode& code) {
    const int n = code.length();
    std::vector<int> values(std::size_t{1} << n);
    for (Subset x = 0; x <= full_set(n); ++x) values[x] = rank(code, x);
    return RankFunction(n, std::move(values));
}

}  // namespace aacode
