// rank_function.hpp -- matroid/demi-matroid rank functions and their calculus:
// axioms, the two duals, essential sets, flags, alternating-sum rank functions
// and sigma-profiles. Everything is tabulated densely over all 2^n subsets.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aacode/rng.hpp"
#include "aacode/subsets.hpp"

namespace aacode {

struct NotAFlagError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An integer-valued function on all subsets of {1,...,n}, stored densely.
/// This is the common carrier for matroid ranks r, their duals r* and
/// supplement duals r-bar, and the alternating sums rho/eta/theta/pi.
class RankFunction {
   public:
    RankFunction(int n, std::vector<int> values) : n_(n), values_(std::move(values)) {
        if (n < 0 || n > kMaxGroundSize) throw std::invalid_argument("RankFunction: n out of range");
        if (values_.size() != (std::size_t{1} << n_)) throw std::invalid_argument("RankFunction: table size != 2^n");
        for (int v : values_)
            if (v < 0) throw std::invalid_argument("RankFunction: negative value");
    }

    static RankFunction zero(int n) { return RankFunction(n, std::vector<int>(std::size_t{1} << n, 0)); }

    /// The free function X -> |X|.
    static RankFunction free(int n) {
        std::vector<int> v(std::size_t{1} << n);
        for (Subset x = 0; x < v.size(); ++x) v[x] = subset_size(x);
        return RankFunction(n, std::move(v));
    }

    int n() const { return n_; }
    int operator()(Subset x) const { return values_[x]; }
    /// r(E), the rank of the (demi-)matroid.
    int rank() const { return values_[full_set(n_)]; }
    const std::vector<int>& table() const { return values_; }

    friend bool operator==(const RankFunction&, const RankFunction&) = default;

   private:
    int n_;
    std::vector<int> values_;
};

/// Result of an axiom scan. On failure, the witness names the first
/// offending (X, x) (and y for R3) in canonical order: increasing subset
/// size, then lexicographic.
struct AxiomCheck {
    bool ok = true;
    std::string axiom;       // "R1", "R2" or "R3"
    Subset set = 0;          // the X of the witness
    int element = -1;        // x (0-based)
    int element2 = -1;       // y (0-based), R3 only
};

/// R1 and R2. The R2 witness reports (X u {x}, x), i.e. the pair in the
/// essential-set sense, so callers can relate it to E_M membership directly.
inline AxiomCheck verify_demimatroid(const RankFunction& f) {
    const int n = f.n();
    if (f(0) != 0) return {false, "R1", 0, -1, -1};
    for (Subset x : canonical_subset_order(n)) {
        for (int e = 0; e < n; ++e) {
            if (contains(x, e)) continue;
            const Subset xe = with_element(x, e);
            if (f(xe) < f(x) || f(xe) > f(x) + 1) return {false, "R2", xe, e, -1};
        }
    }
    return {};
}

inline AxiomCheck verify_matroid(const RankFunction& f) {
    AxiomCheck base = verify_demimatroid(f);
    if (!base.ok) return base;
    const int n = f.n();
    for (Subset x : canonical_subset_order(n)) {
        for (int e = 0; e < n; ++e) {
            if (contains(x, e)) continue;
            for (int e2 = e + 1; e2 < n; ++e2) {
                if (contains(x, e2)) continue;
                if (f(x) == f(with_element(x, e)) && f(x) == f(with_element(x, e2)) &&
                    f(with_element(with_element(x, e), e2)) != f(x))
                    return {false, "R3", x, e, e2};
            }
        }
    }
    return {};
}

/// First dual: r*(X) = |X| + r(E\X) - r(E). An involution; rank n - r(E).
inline RankFunction dual(const RankFunction& f) {
    const int n = f.n();
    const Subset e = full_set(n);
    std::vector<int> v(std::size_t{1} << n);
    for (Subset x = 0; x <= e; ++x) v[x] = subset_size(x) + f(e & ~x) - f(e);
    return RankFunction(n, std::move(v));
}

/// Supplement dual: r-bar(X) = r(E) - r(E\X). An involution commuting with dual.
inline RankFunction supplement_dual(const RankFunction& f) {
    const int n = f.n();
    const Subset e = full_set(n);
    std::vector<int> v(std::size_t{1} << n);
    for (Subset x = 0; x <= e; ++x) v[x] = f(e) - f(e & ~x);
    return RankFunction(n, std::move(v));
}

/// E_M = {(X, x) : x in X, r(X\{x}) = r(X)}, stored as one n-bit row per
/// subset: bit x of row(X) is set iff (X, x) qualifies.
class EssentialSet {
   public:
    EssentialSet(int n, std::vector<std::uint32_t> rows) : n_(n), rows_(std::move(rows)) {}

    int n() const { return n_; }
    bool contains_pair(Subset x, int element0) const { return (rows_[x] >> element0) & 1u; }
    std::uint32_t row(Subset x) const { return rows_[x]; }

    std::size_t pair_count() const {
        std::size_t c = 0;
        for (std::uint32_t r : rows_) c += static_cast<std::size_t>(subset_size(r));
        return c;
    }

    bool subset_of(const EssentialSet& other) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i] & ~other.rows_[i]) return false;
        return true;
    }

    /// First pair of *this not in other, canonical order; nullopt if included.
    std::optional<std::pair<Subset, int>> first_not_in(const EssentialSet& other) const {
        for (Subset x : canonical_subset_order(n_)) {
            const std::uint32_t extra = rows_[x] & ~other.rows_[x];
            if (extra) return std::make_pair(x, std::countr_zero(extra));
        }
        return std::nullopt;
    }

    friend bool operator==(const EssentialSet&, const EssentialSet&) = default;

   private:
    int n_;
    std::vector<std::uint32_t> rows_;
};

inline EssentialSet essential_set(const RankFunction& f) {
    const int n = f.n();
    std::vector<std::uint32_t> rows(std::size_t{1} << n, 0);
    for (Subset x = 1; x <= full_set(n); ++x) {
        std::uint32_t row = 0;
        for (int e : elements(x))
            if (f(without_element(x, e)) == f(x)) row |= std::uint32_t{1} << e;
        rows[x] = row;
    }
    return EssentialSet(n, std::move(rows));
}

/// An ordered list (f_1,...,f_m) of rank functions on a common ground set
/// with f_m <= ... <= f_1 pointwise.
class Flag {
   public:
    explicit Flag(std::vector<RankFunction> members) : members_(std::move(members)) {
        if (members_.empty()) throw NotAFlagError("flag must have at least one member");
        const int n = members_.front().n();
        for (std::size_t i = 1; i < members_.size(); ++i) {
            if (members_[i].n() != n) throw NotAFlagError("flag members on different ground sets");
            for (Subset x = 0; x <= full_set(n); ++x)
                if (members_[i](x) > members_[i - 1](x))
                    throw NotAFlagError("not a flag: member " + std::to_string(i + 1) + " exceeds member " +
                                        std::to_string(i) + " at " + format_subset(x));
        }
    }

    int n() const { return members_.front().n(); }
    std::size_t size() const { return members_.size(); }
    const RankFunction& member(std::size_t i) const { return members_[i]; }
    const std::vector<RankFunction>& members() const { return members_; }

   private:
    std::vector<RankFunction> members_;
};

/// Whether E_{M_1} c E_{M_2} c ... c E_{M_m} holds.
inline bool essential_chain_holds(const Flag& flag) {
    EssentialSet prev = essential_set(flag.member(0));
    for (std::size_t i = 1; i < flag.size(); ++i) {
        EssentialSet cur = essential_set(flag.member(i));
        if (!prev.subset_of(cur)) return false;
        prev = std::move(cur);
    }
    return true;
}

namespace detail {
inline RankFunction alternating_sum(const Flag& flag) {
    const int n = flag.n();
    std::vector<int> v(std::size_t{1} << n, 0);
    for (std::size_t i = 0; i < flag.size(); ++i) {
        const int sign = (i % 2 == 0) ? 1 : -1;
        for (Subset x = 0; x <= full_set(n); ++x) v[x] += sign * flag.member(i)(x);
    }
    // For a flag the partial alternating sums are nonnegative, so the
    // RankFunction constructor's >= 0 check cannot fire.
    return RankFunction(n, std::move(v));
}
}  // namespace detail

/// rho = f1 - f2 for a pair. The pair theorem: rho is a demi-matroid iff
/// E_{f1} c E_{f2}, and both failures happen at the same (X, x). The scan
/// checks that coincidence at every pair and reports the first witness.
struct PairRhoResult {
    bool is_demimatroid = true;
    RankFunction rho;       // the difference f1 - f2, demi-matroid iff is_demimatroid
    Subset witness_set = 0; // first (X, x) with (X,x) in E_{f1} \ E_{f2},
    int witness_element = -1;  // equally the first R2 drop of rho
};

inline PairRhoResult pair_rho(const RankFunction& f1, const RankFunction& f2) {
    Flag flag({f1, f2});  // throws NotAFlagError unless f2 <= f1 pointwise
    RankFunction rho = detail::alternating_sum(flag);
    const EssentialSet e1 = essential_set(f1);
    const EssentialSet e2 = essential_set(f2);
    PairRhoResult result{true, std::move(rho), 0, -1};
    for (Subset x : canonical_subset_order(f1.n())) {
        for (int e : elements(x)) {
            const bool inclusion_broken = e1.contains_pair(x, e) && !e2.contains_pair(x, e);
            const bool axiom_broken = result.rho(without_element(x, e)) > result.rho(x);
            if (inclusion_broken != axiom_broken)
                throw std::logic_error("pair theorem violated: witnesses diverge at " + format_subset(x));
            if (inclusion_broken && result.is_demimatroid) {
                result.is_demimatroid = false;
                result.witness_set = x;
                result.witness_element = e;
            }
        }
    }
    return result;
}

/// rho_F = sum (-1)^{i+1} r_i. When the essential-set chain condition holds
/// the result is guaranteed to be a demi-matroid and that is verified here.
inline RankFunction flag_rho(const Flag& flag) {
    RankFunction rho = detail::alternating_sum(flag);
    if (essential_chain_holds(flag)) {
        const AxiomCheck check = verify_demimatroid(rho);
        if (!check.ok)
            throw std::logic_error("flag theorem violated: rho fails " + check.axiom + " at " +
                                   format_subset(check.set));
    }
    return rho;
}

/// The three dualized alternating sums of a flag and their closed forms:
///   eta_F   = sum (-1)^{m-i} r_i*      = sd(rho_F) for even m, dual(rho_F) for odd m
///   theta_F = sum (-1)^{i+1} sd(r_i)   = sd(rho_F)
///   pi_F    = sum (-1)^{m-i} sd(r_i*)  = rho_F for even m, dual(sd(rho_F)) for odd m
/// The identities are algebraic, so they are asserted unconditionally.
struct FlagDuals {
    RankFunction eta;
    RankFunction theta;
    RankFunction pi;
};

inline FlagDuals flag_eta_theta_pi(const Flag& flag) {
    const int n = flag.n();
    const std::size_t m = flag.size();
    std::vector<int> eta(std::size_t{1} << n, 0), theta(eta), pi(eta);
    for (std::size_t i = 0; i < m; ++i) {
        const int sign_fwd = (i % 2 == 0) ? 1 : -1;               // (-1)^{i+1} with i 1-based
        const int sign_rev = ((m - 1 - i) % 2 == 0) ? 1 : -1;     // (-1)^{m-i}
        const RankFunction d = dual(flag.member(i));
        const RankFunction sd = supplement_dual(flag.member(i));
        const RankFunction sdd = supplement_dual(d);
        for (Subset x = 0; x <= full_set(n); ++x) {
            eta[x] += sign_rev * d(x);
            theta[x] += sign_fwd * sd(x);
            pi[x] += sign_rev * sdd(x);
        }
    }
    FlagDuals out{RankFunction(n, std::move(eta)), RankFunction(n, std::move(theta)), RankFunction(n, std::move(pi))};

    const RankFunction rho = detail::alternating_sum(flag);
    const RankFunction sd_rho = supplement_dual(rho);
    const bool even = (m % 2 == 0);
    if (out.theta != sd_rho) throw std::logic_error("duality relation violated: theta != sd(rho)");
    if (out.eta != (even ? sd_rho : dual(rho))) throw std::logic_error("duality relation violated: eta");
    if (out.pi != (even ? rho : dual(sd_rho))) throw std::logic_error("duality relation violated: pi");
    return out;
}

/// sigma_i = min{|X| : r(X) = i} for 0 <= i <= r(E). Well-defined for
/// demi-matroids, which attain every value along any chain up to E.
struct Profile {
    std::vector<int> sigma;

    /// The j with sigma_j <= mu < sigma_{j+1}, under the convention that the
    /// entry past the end is infinite.
    int step_index(int mu) const {
        int j = 0;
        for (std::size_t i = 1; i < sigma.size(); ++i)
            if (sigma[i] <= mu) j = static_cast<int>(i);
        return j;
    }

    friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profiles(const RankFunction& f) {
    const int l = f.rank();
    std::vector<int> sigma(static_cast<std::size_t>(l) + 1, -1);
    for (Subset x = 0; x <= full_set(f.n()); ++x) {
        const int v = f(x);
        if (v > l) throw std::invalid_argument("profiles: value above rank, not a demi-matroid");
        const int size = subset_size(x);
        if (sigma[v] < 0 || size < sigma[v]) sigma[v] = size;
    }
    for (int i = 0; i <= l; ++i)
        if (sigma[static_cast<std::size_t>(i)] < 0)
            throw std::invalid_argument("profiles: rank value " + std::to_string(i) +
                                        " never attained, not a demi-matroid");
    return Profile{std::move(sigma)};
}

/// Layered sampler: visits subsets by increasing size and draws r(X)
/// uniformly from [max over facets, min over facets + 1]; the interval is
/// nonempty because facet ranks differ by at most one. Valid and
/// deterministic per seed; no uniformity over all demi-matroids is claimed.
inline RankFunction random_demimatroid(int n, std::uint64_t seed) {
    if (n < 0 || n > 8) throw std::invalid_argument("random_demimatroid: n must be 0..8");
    Rng rng(seed);
    std::vector<int> v(std::size_t{1} << n, 0);
    for (Subset x : canonical_subset_order(n)) {
        if (x == 0) continue;
        int lo = 0, hi = kMaxGroundSize;
        for (int e : elements(x)) {
            const int facet = v[without_element(x, e)];
            lo = std::max(lo, facet);
            hi = std::min(hi, facet + 1);
        }
        v[x] = rng.range(lo, hi);
    }
    return RankFunction(n, std::move(v));
}

// --- small queries used by the wiretap analysis and the CLI ---

inline bool is_independent(const RankFunction& f, Subset x) { return f(x) == subset_size(x); }

/// Independent sets of full rank; for a matroid these are exactly the bases.
/// Lexicographic element order.
inline std::vector<Subset> bases(const RankFunction& f) {
    std::vector<Subset> out;
    for_each_subset_of_size(f.n(), f.rank(), [&](Subset x) {
        if (is_independent(f, x)) out.push_back(x);
    });
    return out;
}

inline std::vector<Subset> dependent_sets_of_size(const RankFunction& f, int k) {
    std::vector<Subset> out;
    for_each_subset_of_size(f.n(), k, [&](Subset x) {
        if (!is_independent(f, x)) out.push_back(x);
    });
    return out;
}

}  // namespace aacode
