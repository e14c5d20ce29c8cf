// codefile.hpp -- code serialization, canonical text format, rank-table
// files, and the built-in example codes.
#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aacode/code.hpp"
#include "aacode/rank_function.hpp"

namespace aacode {

struct CodeFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parsed code file: the code plus optional metadata.
struct CodeFile {
    BlockCode code;
    std::string name;              // optional
    std::string note;              // optional provenance
    std::vector<std::string> warnings;  // non-canonical-input notices
};

// Canonical form, one key per line then one codeword per line:
//
//   q 4
//   n 3
//   name sa-example      (omitted when empty)
//   note ...             (omitted when empty)
//   words 16
//   0 0 0
//   ...
//
// Rows sorted lexicographically, single spaces, trailing newline. The loader
// is lenient (comments, blank lines, unsorted rows) but flags any deviation.

inline std::string save_code_string(const BlockCode& code, const std::string& name = "",
                                    const std::string& note = "") {
    std::ostringstream out;
    out << "q " << code.q() << "\n";
    out << "n " << code.length() << "\n";
    if (!name.empty()) out << "name " << name << "\n";
    if (!note.empty()) out << "note " << note << "\n";
    out << "words " << code.size() << "\n";
    for (std::size_t i = 0; i < code.size(); ++i) {
        const auto w = code.word(i);
        for (int j = 0; j < code.length(); ++j) {
            if (j) out << ' ';
            out << int(w[static_cast<std::size_t>(j)]);
        }
        out << "\n";
    }
    return out.str();
}

inline CodeFile load_code_string(const std::string& text, const std::string& source = "<string>") {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int q = -1, n = -1;
    long long words = -1;
    std::string name, note;
    std::vector<Word> rows;
    const auto fail = [&](const std::string& msg) -> void {
        throw CodeFileError(source + ":" + std::to_string(lineno) + ": " + msg);
    };

    bool in_rows = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = line;
        const auto first = trimmed.find_first_not_of(" \t\r");
        if (first == std::string::npos || trimmed[first] == '#') continue;
        if (!in_rows) {
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "q" || key == "n" || key == "words") {
                long long v;
                if (!(ls >> v)) fail("expected an integer after '" + key + "'");
                std::string rest;
                if (ls >> rest) fail("trailing content after '" + key + "' value");
                if (key == "q")
                    q = static_cast<int>(v);
                else if (key == "n")
                    n = static_cast<int>(v);
                else {
                    words = v;
                    if (q < 0 || n < 0) fail("'words' must come after 'q' and 'n'");
                    in_rows = true;
                }
            } else if (key == "name" || key == "note") {
                const auto pos = line.find(key) + key.size();
                const auto start = line.find_first_not_of(" \t", pos);
                std::string value = start == std::string::npos ? "" : line.substr(start);
                while (!value.empty() && (value.back() == '\r' || value.back() == ' ')) value.pop_back();
                (key == "name" ? name : note) = value;
            } else {
                fail("unknown header key '" + key + "'");
            }
        } else {
            std::istringstream ls(line);
            Word w;
            long long v;
            while (ls >> v) {
                if (v < 0 || v >= q)
                    fail("symbol " + std::to_string(v) + " out of range 0.." + std::to_string(q - 1) +
                         " at coordinate " + std::to_string(w.size() + 1));
                w.push_back(static_cast<Symbol>(v));
            }
            if (!ls.eof()) fail("malformed codeword row");
            if (static_cast<int>(w.size()) != n)
                fail("codeword has " + std::to_string(w.size()) + " symbols, expected n = " + std::to_string(n));
            rows.push_back(std::move(w));
        }
    }
    if (q < 0) throw CodeFileError(source + ": missing 'q' header");
    if (n < 0) throw CodeFileError(source + ": missing 'n' header");
    if (words < 0) throw CodeFileError(source + ": missing 'words' header");
    if (static_cast<long long>(rows.size()) != words)
        throw CodeFileError(source + ": expected " + std::to_string(words) + " codewords, found " +
                            std::to_string(rows.size()));

    BlockCode code = [&] {
        try {
            return BlockCode::from_words(Alphabet(q), n, rows);
        } catch (const std::invalid_argument& e) {
            throw CodeFileError(source + ": " + e.what());
        }
    }();
    CodeFile result{std::move(code), std::move(name), std::move(note), {}};
    if (save_code_string(result.code, result.name, result.note) != text)
        result.warnings.push_back(source + ": input is not in canonical form (canonicalized on load)");
    return result;
}

inline CodeFile load_code_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CodeFileError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_code_string(buf.str(), path);
}

inline void save_code_file(const std::string& path, const BlockCode& code, const std::string& name = "",
                           const std::string& note = "") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CodeFileError(path + ": cannot open file for writing");
    out << save_code_string(code, name, note);
}

// --- rank-table files (consumed by the dual/sdual subcommands) ---

inline std::string save_rank_table_string(const RankFunction& f) {
    std::ostringstream out;
    out << "ranktable\n"
        << "n " << f.n() << "\n";
    for (Subset x : canonical_subset_order(f.n())) out << format_subset(x) << ' ' << f(x) << "\n";
    return out.str();
}

inline RankFunction load_rank_table_string(const std::string& text, const std::string& source = "<string>") {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    const auto fail = [&](const std::string& msg) -> void {
        throw CodeFileError(source + ":" + std::to_string(lineno) + ": " + msg);
    };
    int n = -1;
    std::vector<int> values;
    std::vector<char> seen;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!header) {
            std::string tag;
            ls >> tag;
            if (tag != "ranktable") fail("expected 'ranktable' header");
            header = true;
        } else if (n < 0) {
            std::string key;
            ls >> key;
            if (key != "n" || !(ls >> n) || n < 0 || n > kMaxGroundSize) fail("expected 'n <size>'");
            values.assign(std::size_t{1} << n, 0);
            seen.assign(std::size_t{1} << n, 0);
        } else {
            std::string subset_text;
            int v;
            if (!(ls >> subset_text >> v)) fail("expected '<subset> <rank>'");
            Subset x = 0;
            try {
                x = parse_subset(subset_text, n);
            } catch (const InvalidSubsetError& e) {
                fail(e.what());
            }
            if (v < 0) fail("negative rank value");
            if (seen[x]) fail("duplicate row for " + format_subset(x));
            seen[x] = 1;
            values[x] = v;
        }
    }
    if (n < 0) throw CodeFileError(source + ": missing rank-table header");
    for (Subset x = 0; x < seen.size(); ++x)
        if (!seen[x]) throw CodeFileError(source + ": missing row for " + format_subset(x));
    return RankFunction(n, std::move(values));
}

inline RankFunction load_rank_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CodeFileError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_rank_table_string(buf.str(), path);
}

/// Whether a file looks like a rank table rather than a code file.
inline bool is_rank_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return line.compare(first, 9, "ranktable") == 0;
    }
    return false;
}

// --- built-in example codes ---

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline bool is_prime(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

}  // namespace detail

/// The 16-word quaternary code of length 3 whose matroid is U_{2,3}; the
/// standard example of an almost affine code not equivalent to a linear one.
inline BlockCode sa_example() {
    static const char* const kWords[] = {"000", "011", "022", "033", "101", "112", "123", "130",
                                         "202", "213", "220", "231", "303", "310", "321", "332"};
    std::vector<Word> words;
    for (const char* w : kWords) words.push_back({Symbol(w[0] - '0'), Symbol(w[1] - '0'), Symbol(w[2] - '0')});
    return BlockCode::from_words(Alphabet(4), 3, words);
}

/// Generator matrix of the ternary length-18 code whose pair-folding
/// realizes the non-Pappus matroid. Checksummed because it is the one large
/// embedded constant; the dependent-triple acceptance test is the ultimate
/// guard on its content.
inline const std::vector<std::vector<int>>& non_pappus_generator() {
    static const std::vector<std::vector<int>> g = [] {
        const std::string rows[6] = {
            "1 0 1 0 0 0 1 0 0 0 1 0 1 0 1 0 0 0",
            "0 1 0 1 0 0 0 1 0 0 0 1 0 1 0 1 0 0",
            "0 0 0 0 0 0 1 0 1 0 2 1 0 1 1 0 1 0",
            "0 0 0 0 0 0 0 2 0 1 2 0 1 2 0 2 0 1",
            "0 0 1 0 1 0 0 1 0 0 0 1 0 0 1 1 1 0",
            "0 0 0 1 0 1 2 1 0 0 2 1 0 0 1 0 0 1",
        };
        std::string digits;
        std::vector<std::vector<int>> m;
        for (const std::string& r : rows) {
            std::vector<int> row;
            for (char c : r)
                if (c != ' ') {
                    row.push_back(c - '0');
                    digits += c;
                }
            m.push_back(std::move(row));
        }
        if (detail::fnv1a64(digits) != 0x5183af28f8ab3f83ull)
            throw std::logic_error("non-Pappus generator matrix corrupted");
        return m;
    }();
    return g;
}

/// The full F_3 row span of the generator above: 729 ternary words of
/// length 18. Folding its coordinate pairs yields the non-Pappus code.
inline BlockCode non_pappus_unfolded() {
    const auto& g = non_pappus_generator();
    std::vector<Symbol> flat;
    flat.reserve(729u * 18u);
    for (int combo = 0; combo < 729; ++combo) {
        int c = combo;
        int coef[6];
        for (int r = 0; r < 6; ++r) {
            coef[r] = c % 3;
            c /= 3;
        }
        for (int col = 0; col < 18; ++col) {
            int v = 0;
            for (int r = 0; r < 6; ++r) v += coef[r] * g[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            flat.push_back(static_cast<Symbol>(v % 3));
        }
    }
    return BlockCode::from_word_multiset(Alphabet(3), 18, std::move(flat));
}

/// The folded code: alphabet F_3^2 flattened through (a,b) -> 3a+b, giving
/// q = 9 symbols and length 9. Length 9, dimension 3, matroid non-Pappus.
inline BlockCode non_pappus_folded() {
    const BlockCode unfolded = non_pappus_unfolded();
    std::vector<Symbol> flat;
    flat.reserve(unfolded.size() * 9u);
    for (std::size_t i = 0; i < unfolded.size(); ++i) {
        const auto w = unfolded.word(i);
        for (int j = 0; j < 9; ++j)
            flat.push_back(static_cast<Symbol>(3 * w[static_cast<std::size_t>(2 * j)] + w[static_cast<std::size_t>(2 * j + 1)]));
    }
    return BlockCode::from_word_multiset(Alphabet(9), 9, std::move(flat));
}

/// A code whose matroid is the uniform matroid U_{k,n} over an alphabet of
/// size q. k = 0, 1 or n works for any q; intermediate k uses polynomial
/// evaluation and needs q prime with n <= q.
inline BlockCode uniform_code(int q, int k, int n) {
    Alphabet alphabet(q);
    if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("uniform code: n must be 0..20");
    if (k < 0 || k > n) throw std::invalid_argument("uniform code: k must be 0..n");
    const auto size = detail::checked_pow(static_cast<std::uint64_t>(q), k);
    if (!size || *size > (std::uint64_t{1} << 22))
        throw InfeasibleSizeError("uniform code with q^" + std::to_string(k) + " words is too large");
    std::vector<Symbol> flat;
    flat.reserve(static_cast<std::size_t>(*size) * static_cast<std::size_t>(n));
    if (k == 0) {
        flat.assign(static_cast<std::size_t>(n), 0);
    } else if (k == 1) {
        for (int a = 0; a < q; ++a) flat.insert(flat.end(), static_cast<std::size_t>(n), static_cast<Symbol>(a));
    } else if (k == n) {
        for (std::uint64_t v = 0; v < *size; ++v) {
            std::uint64_t x = v;
            Word w(static_cast<std::size_t>(n));
            for (int j = n - 1; j >= 0; --j) {
                w[static_cast<std::size_t>(j)] = static_cast<Symbol>(x % q);
                x /= q;
            }
            flat.insert(flat.end(), w.begin(), w.end());
        }
    } else {
        if (!detail::is_prime(q) || n > q)
            throw std::invalid_argument("uniform code with 1 < k < n needs a prime q >= n");
        // Evaluate every polynomial of degree < k at the points 0..n-1.
        for (std::uint64_t v = 0; v < *size; ++v) {
            std::uint64_t x = v;
            std::vector<int> coef(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j) {
                coef[static_cast<std::size_t>(j)] = static_cast<int>(x % q);
                x /= q;
            }
            for (int point = 0; point < n; ++point) {
                int value = 0;
                for (int j = k - 1; j >= 0; --j) value = (value * point + coef[static_cast<std::size_t>(j)]) % q;
                flat.push_back(static_cast<Symbol>(value));
            }
        }
    }
    return BlockCode::from_word_multiset(alphabet, n, std::move(flat));
}

/// Built-in codes by name: "sa-example", "non-pappus-folded", or
/// "uniform(q,k,n)".
inline BlockCode builtin(const std::string& name) {
    if (name == "sa-example") return sa_example();
    if (name == "non-pappus-folded") return non_pappus_folded();
    int q, k, n;
    if (std::sscanf(name.c_str(), "uniform(%d,%d,%d)", &q, &k, &n) == 3) return uniform_code(q, k, n);
    throw std::invalid_argument("unknown builtin code '" + name +
                                "' (available: sa-example, non-pappus-folded, uniform(q,k,n))");
}

}  // namespace aacode
