// subsets.hpp -- ground-set subsets as bitmasks, n <= 20
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aacode {

/// A subset of the ground set E = {1,...,n}, stored as a bitmask.
/// Bit i (0-based) encodes membership of element i+1. All public I/O is
/// 1-based to match the usual coordinate numbering; internals are 0-based.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSize = 20;

struct InvalidSubsetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr Subset full_set(int n) { return (Subset{1} << n) - 1; }

inline constexpr int subset_size(Subset x) { return std::popcount(x); }

inline constexpr bool contains(Subset x, int element0) { return (x >> element0) & 1u; }

inline constexpr Subset with_element(Subset x, int element0) { return x | (Subset{1} << element0); }

inline constexpr Subset without_element(Subset x, int element0) { return x & ~(Subset{1} << element0); }

inline void check_subset(Subset x, int n, const char* what) {
    if (x & ~full_set(n))
        throw InvalidSubsetError(std::string(what) + ": subset has elements outside 1.." + std::to_string(n));
}

/// 0-based elements of x in increasing order.
inline std::vector<int> elements(Subset x) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(subset_size(x)));
    while (x) {
        out.push_back(std::countr_zero(x));
        x &= x - 1;
    }
    return out;
}

/// Lexicographic order on the increasing 1-based element sequences.
/// {1,4} < {2,3} even though 0b1001 > 0b0110 as integers.
inline bool subset_lex_less(Subset a, Subset b) {
    while (a && b) {
        const int ea = std::countr_zero(a);
        const int eb = std::countr_zero(b);
        if (ea != eb) return ea < eb;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

/// The canonical scan order used everywhere a "first witness" is reported:
/// increasing size, then lexicographic on element sequences.
inline std::vector<Subset> canonical_subset_order(int n) {
    std::vector<Subset> order;
    order.reserve(std::size_t{1} << n);
    for (Subset x = 0; x <= full_set(n); ++x) order.push_back(x);
    std::sort(order.begin(), order.end(), [](Subset a, Subset b) {
        const int sa = subset_size(a), sb = subset_size(b);
        if (sa != sb) return sa < sb;
        return subset_lex_less(a, b);
    });
    return order;
}

/// Visit all size-k subsets of {0..n-1} in lexicographic element order.
template <typename Fn>
void for_each_subset_of_size(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        Subset x = 0;
        for (int i : idx) x = with_element(x, i);
        fn(x);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

/// "{1,3,4}" with 1-based elements; "{}" for the empty set.
inline std::string format_subset(Subset x) {
    std::string out = "{";
    bool first = true;
    for (int e : elements(x)) {
        if (!first) out += ',';
        out += std::to_string(e + 1);
        first = false;
    }
    out += '}';
    return out;
}

/// Parses "5,6" or "{5,6}" (1-based, comma-separated) into a mask.
/// An empty string, "-" or "{}" denotes the empty set.
inline Subset parse_subset(const std::string& text, int n) {
    std::string s = text;
    if (!s.empty() && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
    if (s.empty() || s == "-") return 0;
    Subset x = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        const std::string tok = s.substr(pos, next - pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw InvalidSubsetError("malformed subset list: bad token '" + tok + "'");
        }
        if (used != tok.size()) throw InvalidSubsetError("malformed subset list: bad token '" + tok + "'");
        if (v < 1 || v > n)
            throw InvalidSubsetError("subset element " + std::to_string(v) + " outside 1.." + std::to_string(n));
        if (contains(x, v - 1)) throw InvalidSubsetError("subset element " + std::to_string(v) + " repeated");
        x = with_element(x, v - 1);
        pos = next + 1;
    }
    return x;
}

}  // namespace aacode
