// rng.hpp -- seeded deterministic random source
#pragma once

#include <cstdint>
#include <random>

namespace aacode {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// mt19937_64 plus a portable bounded draw. std::uniform_int_distribution is
/// implementation-defined, so bounded values go through explicit rejection
/// sampling instead; identical seeds give identical streams on every platform.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform value in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t v = gen_();
        while (v > limit) v = gen_();
        return v % bound;
    }

    /// Uniform value in [lo, hi] inclusive.
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

   private:
    std::mt19937_64 gen_;
};

}  // namespace aacode
