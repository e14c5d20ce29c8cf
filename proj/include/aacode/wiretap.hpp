// wiretap.hpp -- the two-party wire-tap channel of type II: coset encoding
// through a Latin square, the adversary's overcode, omega-sets, exact
// conditional entropy and equivocation/uncertainty tables.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "aacode/code.hpp"
#include "aacode/latin_square.hpp"
#include "aacode/rank_function.hpp"
#include "aacode/rng.hpp"
#include "aacode/subsets.hpp"

namespace aacode {

/// Enumerations above this many elementary steps are refused.
inline constexpr std::uint64_t kStepGuard = 100'000'000;

using Message = std::vector<Symbol>;  // values on E\B, increasing coordinate order
using Transmission = Word;            // a full length-n word

/// An almost affine code C, a basis B of M_C, and a mixing Latin square.
/// Construction verifies the code, the basis, and that projection onto B
/// is a bijection onto A^B; the code's full rank table is precomputed.
class WiretapScheme {
   public:
    WiretapScheme(BlockCode code, Subset basis, LatinSquare phi)
        : code_(std::move(code)), basis_(basis), phi_(std::move(phi)), code_matroid_(RankFunction::zero(0)) {
        if (phi_.q() != code_.q()) throw std::invalid_argument("latin square order != alphabet size");
        check_subset(basis_, code_.length(), "scheme basis");
        const AffineReport report = verify_almost_affine(code_);
        if (!report.is_almost_affine)
            throw NotAlmostAffineError("scheme code is not almost affine at X = " + format_subset(*report.witness),
                                       *report.witness);
        k_ = *report.dimension;
        code_matroid_ = matroid_of(code_);
        if (code_matroid_(basis_) != subset_size(basis_) || subset_size(basis_) != k_)
            throw std::invalid_argument("basis " + format_subset(basis_) + " is not a basis of the code's matroid");
        message_coords_ = elements(full_set(code_.length()) & ~basis_);
        basis_coords_ = elements(basis_);
        // c -> c_B is injective (|C_B| = q^k = |C|); tabulate the inverse.
        decode_map_.reserve(code_.size() * 2);
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const auto [it, fresh] = decode_map_.emplace(pack_basis(code_.word(i)), i);
            if (!fresh) throw std::logic_error("projection onto the basis is not injective");
        }
    }

    const BlockCode& code() const { return code_; }
    const LatinSquare& phi() const { return phi_; }
    const RankFunction& code_matroid() const { return code_matroid_; }
    Subset basis() const { return basis_; }
    Subset message_set() const { return full_set(n()) & ~basis_; }
    int n() const { return code_.length(); }
    int k() const { return k_; }
    int q() const { return code_.q(); }
    /// Coordinates of E\B in increasing order; message symbol i lives on
    /// coordinate message_coords()[i].
    const std::vector<int>& message_coords() const { return message_coords_; }

    /// The unique codeword agreeing with w on B.
    std::span<const Symbol> codeword_matching_basis(std::span<const Symbol> w) const {
        return code_.word(decode_map_.at(pack_basis(w)));
    }

   private:
    std::uint64_t pack_basis(std::span<const Symbol> w) const {
        std::uint64_t key = 0;
        for (int c : basis_coords_) key = key * static_cast<std::uint64_t>(q()) + w[static_cast<std::size_t>(c)];
        return key;
    }

    BlockCode code_;
    Subset basis_;
    LatinSquare phi_;
    RankFunction code_matroid_;
    int k_ = 0;
    std::vector<int> message_coords_;
    std::vector<int> basis_coords_;
    std::unordered_map<std::uint64_t, std::size_t> decode_map_;
};

/// The adversary's knowledge: a subset X of message coordinates with its
/// values M, and a tap set Y of transmission coordinates.
struct TapScenario {
    Subset known = 0;                  // X, subset of E\B
    std::vector<Symbol> known_values;  // M, one value per element of X (increasing order)
    Subset taps = 0;                   // Y, subset of E

    TapScenario(const WiretapScheme& scheme, Subset known_, std::vector<Symbol> values, Subset taps_)
        : known(known_), known_values(std::move(values)), taps(taps_) {
        if (known & scheme.basis()) throw std::invalid_argument("known set intersects the basis");
        check_subset(known, scheme.n(), "known set");
        check_subset(taps, scheme.n(), "tap set");
        if (known_values.size() != static_cast<std::size_t>(subset_size(known)))
            throw std::invalid_argument("known-value count != |X|");
        for (Symbol s : known_values)
            if (s >= scheme.q()) throw std::invalid_argument("known value outside alphabet");
    }
};

namespace detail {

inline void check_message(const WiretapScheme& scheme, const Message& m) {
    if (m.size() != scheme.message_coords().size())
        throw std::invalid_argument("message length " + std::to_string(m.size()) + " != n-k = " +
                                    std::to_string(scheme.message_coords().size()));
    for (Symbol s : m)
        if (s >= scheme.q()) throw std::invalid_argument("message symbol outside alphabet");
}

/// Message value at 0-based coordinate c of E\B.
inline Symbol message_at(const WiretapScheme& scheme, const Message& m, int c) {
    const auto& coords = scheme.message_coords();
    const auto it = std::lower_bound(coords.begin(), coords.end(), c);
    return m[static_cast<std::size_t>(it - coords.begin())];
}

/// Visits every message agreeing with M on X, in increasing packed order of
/// the free coordinates. fn receives the full message.
template <typename Fn>
void for_each_message_with(const WiretapScheme& scheme, Subset known, std::span<const Symbol> known_values, Fn&& fn) {
    const auto& coords = scheme.message_coords();
    Message m(coords.size(), 0);
    std::vector<std::size_t> free_pos;
    std::size_t vi = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (contains(known, coords[i]))
            m[i] = known_values[vi++];
        else
            free_pos.push_back(i);
    }
    const int q = scheme.q();
    while (true) {
        fn(const_cast<const Message&>(m));
        std::size_t p = free_pos.size();
        while (p > 0) {
            Symbol& digit = m[free_pos[p - 1]];
            if (digit + 1 < q) {
                ++digit;
                break;
            }
            digit = 0;
            --p;
        }
        if (p == 0) break;
    }
}

}  // namespace detail

/// Phi_m(c): basis coordinates copied, the rest mixed through phi(c_i, m_i).
inline Transmission shift_word(const WiretapScheme& scheme, const Message& m, std::span<const Symbol> c) {
    detail::check_message(scheme, m);
    if (!scheme.code().contains(c)) throw std::invalid_argument("shift_word: word not in code");
    Transmission w(c.begin(), c.end());
    std::size_t mi = 0;
    for (int i : scheme.message_coords()) w[static_cast<std::size_t>(i)] = scheme.phi().apply(c[static_cast<std::size_t>(i)], m[mi++]);
    return w;
}

/// C_m = Phi_m(C): an almost affine code of the same size and matroid.
inline BlockCode coset_code(const WiretapScheme& scheme, const Message& m) {
    detail::check_message(scheme, m);
    std::vector<Symbol> flat;
    flat.reserve(scheme.code().size() * static_cast<std::size_t>(scheme.n()));
    for (std::size_t i = 0; i < scheme.code().size(); ++i) {
        const auto c = scheme.code().word(i);
        std::size_t mi = 0;
        for (int j = 0; j < scheme.n(); ++j) {
            Symbol s = c[static_cast<std::size_t>(j)];
            if (!contains(scheme.basis(), j)) s = scheme.phi().apply(s, m[mi++]);
            flat.push_back(s);
        }
    }
    return BlockCode::from_word_multiset(scheme.code().alphabet(), scheme.n(), std::move(flat));
}

/// Draws c uniformly from C and returns Phi_m(c); uniform on C_m because
/// Phi_m is injective on C.
inline Transmission encode(const WiretapScheme& scheme, const Message& m, Rng& rng) {
    detail::check_message(scheme, m);
    const std::size_t i = static_cast<std::size_t>(rng.below(scheme.code().size()));
    return shift_word(scheme, m, scheme.code().word(i));
}

/// The unique m with w in C_m: invert the basis projection to recover c,
/// then unmix coordinate-wise. Total on A^E by the partition lemma.
inline Message decode(const WiretapScheme& scheme, std::span<const Symbol> w) {
    if (static_cast<int>(w.size()) != scheme.n()) throw std::invalid_argument("decode: word length != n");
    for (Symbol s : w)
        if (s >= scheme.q()) throw std::invalid_argument("decode: symbol outside alphabet");
    const auto c = scheme.codeword_matching_basis(w);
    Message m;
    m.reserve(scheme.message_coords().size());
    for (int i : scheme.message_coords())
        m.push_back(scheme.phi().inv_first(c[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]));
    return m;
}

/// D_{X,M}: the union of C_m over all m agreeing with M on X, materialized.
/// An almost affine code of dimension n - |X|; its matroid does not depend
/// on M. Refuses sizes past the step guard.
inline BlockCode overcode(const WiretapScheme& scheme, Subset known, std::span<const Symbol> known_values) {
    if (known & scheme.basis()) throw std::invalid_argument("overcode: X intersects the basis");
    check_subset(known, scheme.n(), "overcode");
    if (known_values.size() != static_cast<std::size_t>(subset_size(known)))
        throw std::invalid_argument("overcode: value count != |X|");
    const auto words = detail::checked_pow(static_cast<std::uint64_t>(scheme.q()), scheme.n() - subset_size(known));
    if (!words || *words > kStepGuard / static_cast<std::uint64_t>(scheme.n()))
        throw InfeasibleSizeError("overcode with q^" + std::to_string(scheme.n() - subset_size(known)) +
                                  " words exceeds the enumeration guard");
    std::vector<Symbol> flat;
    flat.reserve(static_cast<std::size_t>(*words) * static_cast<std::size_t>(scheme.n()));
    detail::for_each_message_with(scheme, known, known_values, [&](const Message& m) {
        for (std::size_t i = 0; i < scheme.code().size(); ++i) {
            const auto c = scheme.code().word(i);
            std::size_t mi = 0;
            for (int j = 0; j < scheme.n(); ++j) {
                Symbol s = c[static_cast<std::size_t>(j)];
                if (!contains(scheme.basis(), j)) s = scheme.phi().apply(s, m[mi++]);
                flat.push_back(s);
            }
        }
    });
    return BlockCode::from_word_multiset(scheme.code().alphabet(), scheme.n(), std::move(flat));
}

/// Closed-form rank of M_{D_{X,M}}: |Y \ (B u X)| + r(Y n (B u X)).
inline int overcode_rank(const WiretapScheme& scheme, Subset known, Subset taps) {
    if (known & scheme.basis()) throw std::invalid_argument("overcode_rank: X intersects the basis");
    check_subset(known, scheme.n(), "overcode_rank");
    check_subset(taps, scheme.n(), "overcode_rank");
    const Subset bx = scheme.basis() | known;
    return subset_size(taps & ~bx) + scheme.code_matroid()(taps & bx);
}

/// The closed-form rank table of M_{D_{X,M}} as a RankFunction.
inline RankFunction overcode_matroid(const WiretapScheme& scheme, Subset known) {
    std::vector<int> v(std::size_t{1} << scheme.n());
    for (Subset y = 0; y <= full_set(scheme.n()); ++y) v[y] = overcode_rank(scheme, known, y);
    return RankFunction(scheme.n(), std::move(v));
}

/// rho_X(Y) = r_D(Y) - r_C(Y), the pair demi-matroid of (D_{X,M}, C_m).
inline int rho_x(const WiretapScheme& scheme, Subset known, Subset taps) {
    return overcode_rank(scheme, known, taps) - scheme.code_matroid()(taps);
}

/// Full rho_X table, built through the pair construction so the essential-set
/// inclusion is exercised; nested almost affine codes always satisfy it.
inline RankFunction rho_table(const WiretapScheme& scheme, Subset known) {
    PairRhoResult pair = pair_rho(overcode_matroid(scheme, known), scheme.code_matroid());
    if (!pair.is_demimatroid)
        throw std::logic_error("rho_X is not a demi-matroid at " + format_subset(pair.witness_set));
    return std::move(pair.rho);
}

/// Omega_{t,Y,M}(m): empty when m disagrees with M on X, otherwise the words
/// of C_m matching t on Y. Either empty or of size exactly q^{k - r(Y)}.
inline std::vector<Transmission> omega(const WiretapScheme& scheme, const TapScenario& scenario,
                                       std::span<const Symbol> t, const Message& m) {
    detail::check_message(scheme, m);
    if (t.size() != static_cast<std::size_t>(subset_size(scenario.taps)))
        throw std::invalid_argument("omega: tap-value count != |Y|");
    std::size_t vi = 0;
    for (int c : elements(scenario.known)) {
        if (detail::message_at(scheme, m, c) != scenario.known_values[vi++]) return {};
    }
    const std::vector<int> tap_coords = elements(scenario.taps);
    std::vector<Transmission> out;
    for (std::size_t i = 0; i < scheme.code().size(); ++i) {
        Transmission w = shift_word(scheme, m, scheme.code().word(i));
        bool match = true;
        for (std::size_t j = 0; j < tap_coords.size(); ++j)
            if (w[static_cast<std::size_t>(tap_coords[j])] != t[j]) {
                match = false;
                break;
            }
        if (match) out.push_back(std::move(w));
    }
    const auto expected = detail::checked_pow(static_cast<std::uint64_t>(scheme.q()),
                                              scheme.k() - scheme.code_matroid()(scenario.taps));
    if (!out.empty() && (!expected || out.size() != *expected))
        throw std::logic_error("omega size " + std::to_string(out.size()) + " is neither 0 nor q^(k-r(Y))");
    return out;
}

/// |{m : Omega_{w_Y,Y,M}(m) nonempty}| by enumeration over all messages
/// agreeing with M, asserted equal to the closed form q^{n-k-|X|-rho_X(Y)}.
/// w must lie in D_{X,M}, i.e. decode(w) must agree with M on X.
inline std::uint64_t count_compatible(const WiretapScheme& scheme, const TapScenario& scenario,
                                      std::span<const Symbol> w) {
    const Message decoded = decode(scheme, w);
    std::size_t vi = 0;
    for (int c : elements(scenario.known))
        if (detail::message_at(scheme, decoded, c) != scenario.known_values[vi++])
            throw std::invalid_argument("count_compatible: word not in the overcode D_{X,M}");
    const int free_exp = scheme.n() - scheme.k() - subset_size(scenario.known);
    const auto steps = detail::checked_pow(static_cast<std::uint64_t>(scheme.q()), free_exp);
    if (!steps || *steps > kStepGuard / scheme.code().size())
        throw InfeasibleSizeError("count_compatible enumeration exceeds the step guard");

    const std::vector<int> tap_coords = elements(scenario.taps);
    std::uint64_t hits = 0;
    detail::for_each_message_with(scheme, scenario.known, scenario.known_values, [&](const Message& m) {
        for (std::size_t i = 0; i < scheme.code().size(); ++i) {
            const auto c = scheme.code().word(i);
            bool match = true;
            for (int j : tap_coords) {
                Symbol s = c[static_cast<std::size_t>(j)];
                if (!contains(scheme.basis(), j)) s = scheme.phi().apply(s, detail::message_at(scheme, m, j));
                if (s != w[static_cast<std::size_t>(j)]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                ++hits;
                break;
            }
        }
    });
    const auto closed = detail::checked_pow(static_cast<std::uint64_t>(scheme.q()),
                                            free_exp - rho_x(scheme, scenario.known, scenario.taps));
    if (!closed || hits != *closed)
        throw std::logic_error("compatible-message count " + std::to_string(hits) + " != closed form " +
                               std::to_string(*closed));
    return hits;
}

/// H(m | t, M) = n - k - |X| - rho_X(Y), in base-q symbol units.
inline int conditional_entropy(const WiretapScheme& scheme, Subset known, Subset taps) {
    return scheme.n() - scheme.k() - subset_size(known) - rho_x(scheme, known, taps);
}

struct Equivocation {
    int entropy;    // E_mu, worst-case remaining entropy in symbols
    int disclosed;  // Delta_mu = n - k - E_mu
};

/// Exhaustive minimum of H over all tap sets of size mu; no pruning.
inline Equivocation equivocation(const WiretapScheme& scheme, Subset known, int mu) {
    if (mu < 0 || mu > scheme.n()) throw std::invalid_argument("equivocation: mu outside 0..n");
    const RankFunction rho = rho_table(scheme, known);
    int best = 0;
    for_each_subset_of_size(scheme.n(), mu, [&](Subset y) { best = std::max(best, rho(y)); });
    const int delta = subset_size(known) + best;
    return {scheme.n() - scheme.k() - delta, delta};
}

struct UncertaintyRow {
    int mu;     // tapped coordinates
    int delta;  // Delta_mu from exhaustive equivocation
    int j;      // profile step index with sigma_j <= mu < sigma_{j+1}
};

/// For every mu, Delta_mu from exhaustive minimization and the j predicted
/// by the sigma-profile of rho_X; the two must satisfy Delta_mu = |X| + j.
inline std::vector<UncertaintyRow> uncertainty_table(const WiretapScheme& scheme, Subset known) {
    const Profile profile = profiles(rho_table(scheme, known));
    std::vector<UncertaintyRow> rows;
    rows.reserve(static_cast<std::size_t>(scheme.n()) + 1);
    for (int mu = 0; mu <= scheme.n(); ++mu) {
        const int delta = equivocation(scheme, known, mu).disclosed;
        const int j = profile.step_index(mu);
        if (delta != subset_size(known) + j)
            throw std::logic_error("uncertainty theorem violated at mu = " + std::to_string(mu));
        rows.push_back({mu, delta, j});
    }
    return rows;
}

}  // namespace aacode
