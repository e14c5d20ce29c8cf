// oracle.hpp -- brute-force recomputation of every closed-form claim. The
// routines here enumerate from definitions only and never route through the
// closed forms they are checking; any mismatch is a hard failure.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aacode/code.hpp"
#include "aacode/rational.hpp"
#include "aacode/rank_function.hpp"
#include "aacode/rng.hpp"
#include "aacode/subsets.hpp"
#include "aacode/wiretap.hpp"

namespace aacode {

struct VerificationReport {
    enum class Status { Pass, Fail, Skip };

    std::string claim;     // stable claim id
    std::string params;    // instance parameters
    std::string expected;  // closed-form value
    std::string actual;    // enumerated value
    Status status = Status::Pass;
    std::string reason;    // failure detail or skip reason
    double elapsed_seconds = 0.0;

    bool passed() const { return status == Status::Pass; }
    bool failed() const { return status == Status::Fail; }
};

namespace detail {

class Stopwatch {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Uniformly random size-count subset of the elements of pool.
inline Subset random_subset_of(Subset pool, int count, Rng& rng) {
    std::vector<int> elems = elements(pool);
    Subset out = 0;
    for (int i = 0; i < count; ++i) {
        const std::size_t j = static_cast<std::size_t>(i) + rng.below(elems.size() - static_cast<std::size_t>(i));
        std::swap(elems[static_cast<std::size_t>(i)], elems[j]);
        out = with_element(out, elems[static_cast<std::size_t>(i)]);
    }
    return out;
}

inline std::vector<Symbol> random_values(int count, int q, Rng& rng) {
    std::vector<Symbol> out(static_cast<std::size_t>(count));
    for (auto& s : out) s = static_cast<Symbol>(rng.below(static_cast<std::uint64_t>(q)));
    return out;
}

/// Layered co-sampler for a random flag f_1 >= ... >= f_m of demi-matroids:
/// same interval trick as random_demimatroid, with each layer additionally
/// capped by the one above.
inline std::vector<RankFunction> random_flag_tables(int n, int m, Rng& rng) {
    std::vector<std::vector<int>> tables(static_cast<std::size_t>(m),
                                         std::vector<int>(std::size_t{1} << n, 0));
    for (Subset x : canonical_subset_order(n)) {
        if (x == 0) continue;
        for (int i = 0; i < m; ++i) {
            auto& t = tables[static_cast<std::size_t>(i)];
            int lo = 0, hi = kMaxGroundSize;
            for (int e : elements(x)) {
                const int facet = t[without_element(x, e)];
                lo = std::max(lo, facet);
                hi = std::min(hi, facet + 1);
            }
            if (i > 0) hi = std::min(hi, tables[static_cast<std::size_t>(i - 1)][x]);
            t[x] = rng.range(lo, hi);
        }
    }
    std::vector<RankFunction> out;
    out.reserve(static_cast<std::size_t>(m));
    for (auto& t : tables) out.emplace_back(n, std::move(t));
    return out;
}

/// Random linear code over a prime field: the row span of a random k x n
/// matrix (dimension may come out below k; still linear, still almost affine).
inline BlockCode random_linear_code(int q, int k, int n, Rng& rng) {
    std::vector<std::vector<int>> g(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& row : g)
        for (auto& v : row) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(q)));
    std::uint64_t combos = 1;
    for (int i = 0; i < k; ++i) combos *= static_cast<std::uint64_t>(q);
    std::vector<Symbol> flat;
    flat.reserve(static_cast<std::size_t>(combos) * static_cast<std::size_t>(n));
    for (std::uint64_t v = 0; v < combos; ++v) {
        std::uint64_t x = v;
        std::vector<int> coef(static_cast<std::size_t>(k));
        for (auto& c : coef) {
            c = static_cast<int>(x % static_cast<std::uint64_t>(q));
            x /= static_cast<std::uint64_t>(q);
        }
        for (int col = 0; col < n; ++col) {
            int s = 0;
            for (int row = 0; row < k; ++row)
                s += coef[static_cast<std::size_t>(row)] * g[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            flat.push_back(static_cast<Symbol>(s % q));
        }
    }
    return BlockCode::from_word_multiset(Alphabet(q), n, std::move(flat));
}

}  // namespace detail

/// Exact conditional entropy H(m | t, M) in base-q symbol units, from the
/// probability definition: full enumeration of the (m, w) pairs with
/// m_X = M under the uniform model. The inner log terms must come out as
/// integers (the conditional distributions are uniform per the lemmas);
/// that uniformity is asserted, not assumed.
inline Rational oracle_entropy(const WiretapScheme& scheme, Subset known, std::span<const Symbol> known_values,
                               Subset taps) {
    if (known & scheme.basis()) throw std::invalid_argument("oracle_entropy: X intersects the basis");
    check_subset(known, scheme.n(), "oracle_entropy");
    check_subset(taps, scheme.n(), "oracle_entropy");
    const int free_exp = scheme.n() - scheme.k() - subset_size(known);
    const auto messages = detail::checked_pow(static_cast<std::uint64_t>(scheme.q()), free_exp);
    if (!messages || *messages > kStepGuard / scheme.code().size())
        throw InfeasibleSizeError("entropy enumeration needs q^" + std::to_string(free_exp + scheme.k()) +
                                  " (m,w) pairs, over the step guard");

    const std::vector<int> tap_coords = elements(taps);
    const std::uint64_t q = static_cast<std::uint64_t>(scheme.q());
    // One entry per (m, w) pair: (packed w_Y, running message index).
    std::vector<std::pair<std::uint64_t, std::uint64_t>> events;
    events.reserve(static_cast<std::size_t>(*messages) * scheme.code().size());
    std::uint64_t message_index = 0;
    detail::for_each_message_with(scheme, known, known_values, [&](const Message& m) {
        for (std::size_t i = 0; i < scheme.code().size(); ++i) {
            const auto c = scheme.code().word(i);
            std::uint64_t key = 0;
            for (int j : tap_coords) {
                Symbol s = c[static_cast<std::size_t>(j)];
                if (!contains(scheme.basis(), j)) s = scheme.phi().apply(s, detail::message_at(scheme, m, j));
                key = key * q + s;
            }
            events.emplace_back(key, message_index);
        }
        ++message_index;
    });
    std::sort(events.begin(), events.end());

    // H = sum over t of p(t|M) * log_q #{m : p(m|t,M) > 0}; the inner
    // distribution must be uniform, so per-m counts within a t-group match.
    const std::int64_t total = static_cast<std::int64_t>(events.size());
    std::int64_t weighted_sum = 0;
    std::size_t group_begin = 0;
    while (group_begin < events.size()) {
        std::size_t group_end = group_begin;
        while (group_end < events.size() && events[group_end].first == events[group_begin].first) ++group_end;
        std::uint64_t distinct_m = 0;
        std::size_t run_begin = group_begin;
        std::size_t first_run = 0;
        for (std::size_t i = group_begin; i <= group_end; ++i) {
            if (i == group_end || events[i].second != events[run_begin].second) {
                const std::size_t run = i - run_begin;
                if (distinct_m == 0)
                    first_run = run;
                else if (run != first_run)
                    throw std::logic_error("oracle_entropy: conditional distribution is not uniform");
                ++distinct_m;
                run_begin = i;
            }
        }
        const auto lg = detail::exact_log(distinct_m, q);
        if (!lg) throw std::logic_error("oracle_entropy: compatible-message count is not a power of q");
        weighted_sum += static_cast<std::int64_t>(group_end - group_begin) * *lg;
        group_begin = group_end;
    }
    return Rational(weighted_sum, total);
}

namespace detail {

struct SuiteBuilder {
    std::vector<VerificationReport> reports;

    void add(const std::string& claim, const std::string& params, const std::string& expected,
             const std::string& actual, const Stopwatch& watch, const std::string& fail_reason = "") {
        VerificationReport r;
        r.claim = claim;
        r.params = params;
        r.expected = expected;
        r.actual = actual;
        r.status = (expected == actual) ? VerificationReport::Status::Pass : VerificationReport::Status::Fail;
        if (r.failed()) r.reason = fail_reason.empty() ? "enumerated value differs from closed form" : fail_reason;
        r.elapsed_seconds = watch.seconds();
        reports.push_back(std::move(r));
    }

    void skip(const std::string& claim, const std::string& params, const std::string& reason) {
        VerificationReport r;
        r.claim = claim;
        r.params = params;
        r.status = VerificationReport::Status::Skip;
        r.reason = reason;
        reports.push_back(std::move(r));
    }

    void outcome(const std::string& claim, const std::string& params, bool ok, const Stopwatch& watch,
                 const std::string& fail_reason) {
        add(claim, params, "holds", ok ? "holds" : "violated", watch, fail_reason);
    }
};

}  // namespace detail

/// Machine-checks the wiretap lemmas and theorems on one scheme: the coset
/// partition, coset matroid equality, the overcode lemma (size, closed-form
/// rank, M-independence), the omega lemmas, the entropy theorem and the
/// uncertainty theorem. Instances past the step guard are reported as
/// skipped, never silently dropped.
inline std::vector<VerificationReport> verify_lemma_suite(const WiretapScheme& scheme, std::uint64_t seed = kDefaultSeed,
                                                          int sampled_instances = 50) {
    detail::SuiteBuilder suite;
    Rng rng(seed);
    const int n = scheme.n(), k = scheme.k(), q = scheme.q();
    const Subset message_set = scheme.message_set();
    const auto cosets = detail::checked_pow(static_cast<std::uint64_t>(q), n - k);
    const auto universe = detail::checked_pow(static_cast<std::uint64_t>(q), n);
    const bool tiny = cosets && *cosets <= 10'000 && universe && *universe <= kStepGuard;

    {  // Partition: the cosets C_m tile A^E.
        detail::Stopwatch watch;
        if (!tiny) {
            suite.skip("partition", "all m", "q^(n-k) = " + (cosets ? std::to_string(*cosets) : std::string(">2^62")) +
                                                 " cosets exceeds the 10^4 partition bound");
        } else {
            std::vector<std::uint64_t> all;
            all.reserve(static_cast<std::size_t>(*universe));
            detail::for_each_message_with(scheme, 0, {}, [&](const Message& m) {
                for (std::size_t i = 0; i < scheme.code().size(); ++i) {
                    const auto c = scheme.code().word(i);
                    std::uint64_t key = 0;
                    std::size_t mi = 0;
                    for (int j = 0; j < n; ++j) {
                        Symbol s = c[static_cast<std::size_t>(j)];
                        if (!contains(scheme.basis(), j)) s = scheme.phi().apply(s, m[mi++]);
                        key = key * static_cast<std::uint64_t>(q) + s;
                    }
                    all.push_back(key);
                }
            });
            std::sort(all.begin(), all.end());
            const bool distinct = std::adjacent_find(all.begin(), all.end()) == all.end();
            const bool complete = all.size() == *universe;
            suite.add("partition", "all m", "q^n = " + std::to_string(*universe) + " distinct words",
                      std::to_string(all.size()) + (distinct ? " distinct words" : " words with duplicates"), watch,
                      distinct ? "union does not cover A^E" : "cosets overlap");
        }
    }

    {  // Coset matroids all equal M_C.
        detail::Stopwatch watch;
        bool ok = true;
        std::string witness;
        int checked = 0;
        const auto check_message_matroid = [&](const Message& m) {
            if (!ok) return;
            if (matroid_of(coset_code(scheme, m)) != scheme.code_matroid()) {
                ok = false;
                witness = "m with packed index " + std::to_string(checked);
            }
            ++checked;
        };
        if (tiny) {
            detail::for_each_message_with(scheme, 0, {}, check_message_matroid);
            suite.outcome("coset-matroid", "all " + std::to_string(checked) + " messages", ok, watch, witness);
        } else {
            for (int s = 0; s < 8; ++s)
                check_message_matroid(detail::random_values(n - k, q, rng));
            suite.outcome("coset-matroid", "8 sampled messages", ok, watch, witness);
        }
    }

    // Overcode claims, on every X small enough to materialize D_{X,M}
    // (plus the full-knowledge X when sampling).
    std::vector<Subset> known_sets;
    if (tiny) {
        for (Subset x = 0; x <= full_set(n); ++x)
            if ((x & ~message_set) == 0) known_sets.push_back(x);
    } else {
        for (int size = 0; size <= n - k; ++size) {
            const auto words = detail::checked_pow(static_cast<std::uint64_t>(q), n - size);
            if (!words || *words > kStepGuard / static_cast<std::uint64_t>(n)) continue;
            known_sets.push_back(detail::random_subset_of(message_set, size, rng));
        }
    }
    for (Subset known : known_sets) {
        const std::string x_text = "X = " + format_subset(known);
        const auto m1 = detail::random_values(subset_size(known), q, rng);
        detail::Stopwatch watch;
        const auto d_size = detail::checked_pow(static_cast<std::uint64_t>(q), n - subset_size(known));
        if (!d_size || *d_size > kStepGuard / static_cast<std::uint64_t>(n)) {
            suite.skip("overcode-size", x_text, "materializing q^" + std::to_string(n - subset_size(known)) +
                                                    " words exceeds the step guard");
            continue;
        }
        const BlockCode d = overcode(scheme, known, m1);
        suite.add("overcode-size", x_text, std::to_string(*d_size), std::to_string(d.size()), watch);

        // Rank of the materialized overcode vs the closed form, exhaustively
        // when 2^n scans fit the guard, else on sampled tap sets.
        const std::uint64_t per_subset = d.size();
        std::vector<Subset> taps_to_check;
        std::string tap_note;
        if ((std::uint64_t{1} << n) * per_subset <= kStepGuard) {
            for (Subset y = 0; y <= full_set(n); ++y) taps_to_check.push_back(y);
            tap_note = "all Y";
        } else {
            const int budget = static_cast<int>(kStepGuard / (4 * per_subset));
            const int count = std::max(4, std::min(16, budget));
            for (int i = 0; i < count; ++i)
                taps_to_check.push_back(detail::random_subset_of(full_set(n), rng.range(0, n), rng));
            tap_note = std::to_string(taps_to_check.size()) + " sampled Y";
        }
        {
            detail::Stopwatch w2;
            bool ok = true;
            std::string witness;
            for (Subset y : taps_to_check) {
                int materialized = -1;
                try {
                    materialized = rank(d, y);
                } catch (const NotAlmostAffineError& e) {
                    ok = false;
                    witness = e.what();
                    break;
                }
                if (materialized != overcode_rank(scheme, known, y)) {
                    ok = false;
                    witness = "rank mismatch at Y = " + format_subset(y);
                    break;
                }
            }
            suite.outcome("overcode-rank-closed-form", x_text + ", " + tap_note, ok, w2, witness);
        }
        if (subset_size(known) >= 1 && q >= 2) {
            detail::Stopwatch w3;
            auto m2 = m1;
            m2[0] = static_cast<Symbol>((m2[0] + 1) % q);
            const BlockCode d2 = overcode(scheme, known, m2);
            bool ok = d2.size() == d.size();
            std::string witness = ok ? "" : "overcode sizes differ across M";
            for (Subset y : taps_to_check) {
                if (!ok) break;
                if (rank(d2, y) != rank(d, y)) {
                    ok = false;
                    witness = "rank differs across M at Y = " + format_subset(y);
                }
            }
            suite.outcome("overcode-M-independence", x_text + ", " + tap_note, ok, w3, witness);
        }

        // Omega lemmas against the materialized overcode: sizes, and the
        // counting identity sum_m |Omega| = |{v in D : v_Y = t}|.
        {
            detail::Stopwatch w4;
            bool size_ok = true, count_ok = true, closed_ok = true;
            std::string witness;
            std::vector<std::pair<Subset, std::vector<Symbol>>> probes;
            if (tiny) {
                for (Subset y = 0; y <= full_set(n); ++y) {
                    const std::vector<int> coords = elements(y);
                    for (std::size_t wi = 0; wi < d.size(); ++wi) {
                        std::vector<Symbol> t;
                        for (int c : coords) t.push_back(d.word(wi)[static_cast<std::size_t>(c)]);
                        probes.emplace_back(y, std::move(t));
                    }
                }
            } else {
                for (int i = 0; i < sampled_instances && static_cast<std::uint64_t>(i) * per_subset * 2 < kStepGuard; ++i) {
                    const Subset y = detail::random_subset_of(full_set(n), rng.range(0, n), rng);
                    const auto w = d.word(static_cast<std::size_t>(rng.below(d.size())));
                    std::vector<Symbol> t;
                    for (int c : elements(y)) t.push_back(w[static_cast<std::size_t>(c)]);
                    probes.emplace_back(y, std::move(t));
                }
            }
            for (const auto& [y, t] : probes) {
                if (!size_ok || !count_ok || !closed_ok) break;
                const TapScenario scenario(scheme, known, m1, y);
                const std::vector<int> coords = elements(y);
                const auto omega_expected =
                    detail::checked_pow(static_cast<std::uint64_t>(q), k - rank(scheme.code(), y));
                std::uint64_t nonempty = 0, total_words = 0;
                detail::for_each_message_with(scheme, known, m1, [&](const Message& m) {
                    std::uint64_t hits = 0;
                    for (std::size_t ci = 0; ci < scheme.code().size(); ++ci) {
                        const auto c = scheme.code().word(ci);
                        bool match = true;
                        for (std::size_t j = 0; j < coords.size(); ++j) {
                            Symbol s = c[static_cast<std::size_t>(coords[j])];
                            if (!contains(scheme.basis(), coords[j]))
                                s = scheme.phi().apply(s, detail::message_at(scheme, m, coords[j]));
                            if (s != t[j]) {
                                match = false;
                                break;
                            }
                        }
                        if (match) ++hits;
                    }
                    if (hits > 0) {
                        ++nonempty;
                        total_words += hits;
                        if (hits != *omega_expected) {
                            size_ok = false;
                            witness = "omega size " + std::to_string(hits) + " != q^(k-r(Y)) at Y = " + format_subset(y);
                        }
                    }
                });
                std::uint64_t in_d = 0;
                for (std::size_t wi = 0; wi < d.size(); ++wi) {
                    bool match = true;
                    for (std::size_t j = 0; j < coords.size(); ++j)
                        if (d.word(wi)[static_cast<std::size_t>(coords[j])] != t[j]) {
                            match = false;
                            break;
                        }
                    if (match) ++in_d;
                }
                if (total_words != in_d) {
                    count_ok = false;
                    witness = "sum of omega sizes != overcode matches at Y = " + format_subset(y);
                }
                // Lemma: nonempty count = q^(n-k-|X|-rho_X(Y)) whenever t is
                // realizable from D (these probes always are when in_d > 0).
                if (in_d > 0) {
                    const auto closed = detail::checked_pow(
                        static_cast<std::uint64_t>(q),
                        n - k - subset_size(known) - (rank(d, y) - rank(scheme.code(), y)));
                    if (!closed || nonempty != *closed) {
                        closed_ok = false;
                        witness = "compatible-message count " + std::to_string(nonempty) + " != closed form at Y = " +
                                  format_subset(y);
                    }
                }
            }
            const std::string probe_note = std::to_string(probes.size()) + " (Y,t) probes";
            suite.outcome("omega-size", x_text + ", " + probe_note, size_ok, w4, witness);
            suite.outcome("omega-counting", x_text + ", " + probe_note, count_ok, w4, witness);
            suite.outcome("omega-compatible-count", x_text + ", " + probe_note, closed_ok, w4, witness);
        }
    }

    {  // Entropy theorem: oracle entropy == n - k - |X| - rho_X(Y).
        detail::Stopwatch watch;
        bool ok = true;
        std::string witness;
        int instances = 0;
        const auto check_instance = [&](Subset known, const std::vector<Symbol>& mv, Subset y) {
            if (!ok) return;
            const Rational enumerated = oracle_entropy(scheme, known, mv, y);
            const int closed = conditional_entropy(scheme, known, y);
            if (!(enumerated == closed)) {
                ok = false;
                witness = "H mismatch at X = " + format_subset(known) + ", Y = " + format_subset(y) + ": " +
                          enumerated.str() + " != " + std::to_string(closed);
            }
            ++instances;
        };
        if (tiny) {
            for (Subset known = 0; known <= full_set(n); ++known) {
                if (known & ~message_set) continue;
                const int xs = subset_size(known);
                std::vector<Symbol> mv(static_cast<std::size_t>(xs), 0);
                while (true) {
                    for (Subset y = 0; y <= full_set(n); ++y) check_instance(known, mv, y);
                    int p = xs;
                    while (p > 0 && mv[static_cast<std::size_t>(p - 1)] + 1 == q) mv[static_cast<std::size_t>(--p)] = 0;
                    if (p == 0) break;
                    ++mv[static_cast<std::size_t>(p - 1)];
                }
            }
            suite.outcome("entropy-theorem", "exhaustive, " + std::to_string(instances) + " (X,M,Y) instances", ok,
                          watch, witness);
        } else {
            int attempts = 0;
            while (instances < sampled_instances && attempts < sampled_instances * 4) {
                ++attempts;
                const int xs = rng.range(0, n - k);
                const Subset known = detail::random_subset_of(message_set, xs, rng);
                const auto pairs = detail::checked_pow(static_cast<std::uint64_t>(q), n - xs);
                if (!pairs || *pairs > kStepGuard) continue;
                check_instance(known, detail::random_values(xs, q, rng),
                               detail::random_subset_of(full_set(n), rng.range(0, n), rng));
            }
            suite.outcome("entropy-theorem", std::to_string(instances) + " sampled (X,M,Y) instances", ok, watch,
                          witness);
        }
    }

    {  // Uncertainty theorem: exhaustive Delta_mu == |X| + j from the profile.
        detail::Stopwatch watch;
        bool ok = true;
        std::string witness;
        std::vector<Subset> xs;
        if (tiny) {
            for (Subset known = 0; known <= full_set(n); ++known)
                if ((known & ~message_set) == 0) xs.push_back(known);
        } else {
            for (int size = 0; size <= n - k; ++size) xs.push_back(detail::random_subset_of(message_set, size, rng));
        }
        for (Subset known : xs) {
            try {
                const auto rows = uncertainty_table(scheme, known);  // self-asserting
                for (std::size_t i = 1; i < rows.size(); ++i)
                    if (rows[i].delta < rows[i - 1].delta) {
                        ok = false;
                        witness = "Delta not monotone at X = " + format_subset(known);
                    }
                if (rows.front().delta != subset_size(known) || rows.back().delta != n - k) {
                    ok = false;
                    witness = "Delta endpoints wrong at X = " + format_subset(known);
                }
            } catch (const std::logic_error& e) {
                ok = false;
                witness = e.what();
            }
        }
        suite.outcome("uncertainty-theorem", std::to_string(xs.size()) + " X instances, mu = 0.." + std::to_string(n),
                      ok, watch, witness);
    }

    return suite.reports;
}

/// Random-instance verification of the demi-matroid theorems: duality
/// involutions and commutation, the pair theorem as a biconditional, the
/// essential-set duality lemma, the flag implication, and the eta/theta/pi
/// identities on flags of length 2-4 built from nested shortened codes.
inline std::vector<VerificationReport> verify_demimatroid_theorems(int trials, std::uint64_t seed = kDefaultSeed) {
    detail::SuiteBuilder suite;
    Rng rng(seed);

    bool duals_ok = true, pair_ok = true, eduality_ok = true, nested_ok = true, identities_ok = true,
         implication_ok = true;
    std::string duals_w, pair_w, eduality_w, nested_w, identities_w, implication_w;
    detail::Stopwatch watch;

    for (int trial = 0; trial < trials; ++trial) {
        const int n = 2 + trial % 5;  // 2..6
        const std::string at = " (trial " + std::to_string(trial) + ", n = " + std::to_string(n) + ")";

        {  // Involutions and commutation.
            const RankFunction f = random_demimatroid(n, rng.next());
            if (!verify_demimatroid(f).ok && duals_ok) {
                duals_ok = false;
                duals_w = "random_demimatroid output fails axioms" + at;
            }
            const RankFunction d = dual(f), sd = supplement_dual(f);
            if (duals_ok && (dual(d) != f || supplement_dual(sd) != f)) {
                duals_ok = false;
                duals_w = "involution broken" + at;
            }
            if (duals_ok && supplement_dual(d) != dual(sd)) {
                duals_ok = false;
                duals_w = "duals do not commute" + at;
            }
            if (duals_ok && (d.rank() != n - f.rank() || !verify_demimatroid(d).ok || !verify_demimatroid(sd).ok)) {
                duals_ok = false;
                duals_w = "dual rank or axioms wrong" + at;
            }
        }

        {  // Pair theorem, both directions, difference checked independently.
            const auto flag = detail::random_flag_tables(n, 2, rng);
            std::vector<int> diff(std::size_t{1} << n);
            for (Subset x = 0; x <= full_set(n); ++x) diff[x] = flag[0](x) - flag[1](x);
            const bool axioms = verify_demimatroid(RankFunction(n, diff)).ok;
            const bool inclusion = essential_set(flag[0]).subset_of(essential_set(flag[1]));
            if (axioms != inclusion && pair_ok) {
                pair_ok = false;
                pair_w = std::string("biconditional broken: axioms ") + (axioms ? "hold" : "fail") +
                         ", inclusion " + (inclusion ? "holds" : "fails") + at;
            }
            const PairRhoResult via_op = pair_rho(flag[0], flag[1]);
            if (via_op.is_demimatroid != axioms && pair_ok) {
                pair_ok = false;
                pair_w = "pair_rho disagrees with direct check" + at;
            }
        }

        {  // Essential-set duality lemma on an unconstrained random pair.
            const RankFunction f1 = random_demimatroid(n, rng.next());
            const RankFunction f2 = random_demimatroid(n, rng.next());
            const bool plain = essential_set(f1).subset_of(essential_set(f2));
            const bool dualized = essential_set(dual(f2)).subset_of(essential_set(dual(f1)));
            const bool supplemented = essential_set(supplement_dual(f1)).subset_of(essential_set(supplement_dual(f2)));
            if ((plain != dualized || plain != supplemented) && eduality_ok) {
                eduality_ok = false;
                eduality_w = "inclusion equivalences diverge" + at;
            }
        }

        {  // Flags of nested shortened codes: chain condition + identities.
            static const int primes[] = {2, 3, 5};
            const int q = primes[rng.below(3)];
            const int len = rng.range(3, 6);
            const int dim = rng.range(1, 3);
            const BlockCode base = detail::random_linear_code(q, dim, len, rng);
            const int m = rng.range(2, 4);
            std::vector<BlockCode> chain{base};
            const auto c0 = base.word(static_cast<std::size_t>(rng.below(base.size())));
            const Word anchor(c0.begin(), c0.end());
            for (int i = 1; i < m; ++i) {
                const Subset x = detail::random_subset_of(full_set(len), rng.range(0, len), rng);
                chain.push_back(shorten(chain.back(), x, anchor));
            }
            std::vector<RankFunction> members;
            for (const auto& c : chain) members.push_back(matroid_of(c));
            try {
                const Flag flag(members);
                if (!essential_chain_holds(flag) && nested_ok) {
                    nested_ok = false;
                    nested_w = "nested codes missing the essential chain" + at;
                }
                const RankFunction rho = flag_rho(flag);  // asserts demi-matroid via the chain
                const FlagDuals duals = flag_eta_theta_pi(flag);  // asserts the identities
                if (identities_ok && (!verify_demimatroid(duals.eta).ok || !verify_demimatroid(duals.theta).ok ||
                                      !verify_demimatroid(duals.pi).ok || !verify_demimatroid(rho).ok)) {
                    identities_ok = false;
                    identities_w = "eta/theta/pi/rho not all demi-matroids" + at;
                }
            } catch (const std::exception& e) {
                nested_ok = false;
                nested_w = std::string(e.what()) + at;
            }
        }

        {  // Flag theorem (one direction only) on random flags of length 3-4.
            const int m = rng.range(3, 4);
            const auto tables = detail::random_flag_tables(n, m, rng);
            const Flag flag(tables);
            if (essential_chain_holds(flag)) {
                std::vector<int> rho(std::size_t{1} << n, 0);
                for (std::size_t i = 0; i < tables.size(); ++i)
                    for (Subset x = 0; x <= full_set(n); ++x) rho[x] += (i % 2 ? -1 : 1) * tables[i](x);
                if (!verify_demimatroid(RankFunction(n, rho)).ok && implication_ok) {
                    implication_ok = false;
                    implication_w = "chain holds but rho fails axioms" + at;
                }
            }
        }
    }

    const std::string params = std::to_string(trials) + " trials, n = 2..6";
    suite.outcome("dual-involutions", params, duals_ok, watch, duals_w);
    suite.outcome("pair-theorem-biconditional", params, pair_ok, watch, pair_w);
    suite.outcome("essential-duality", params, eduality_ok, watch, eduality_w);
    suite.outcome("nested-flag-chain", params, nested_ok, watch, nested_w);
    suite.outcome("flag-duality-identities", params, identities_ok, watch, identities_w);
    suite.outcome("flag-implication", params, implication_ok, watch, implication_w);
    return suite.reports;
}

}  // namespace aacode
