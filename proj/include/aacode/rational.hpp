// rational.hpp -- exact rational numbers for the entropy oracle
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace aacode {

/// Exact rational with int64 parts, always normalized (den > 0, gcd = 1).
/// The oracle's sums stay tiny: denominators divide the enumeration count
/// and numerators are bounded by n * count, so int64 is comfortably enough
/// at the sizes the feasibility guard admits.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.num * b.num, a.den * b.den); }
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator==(const Rational& a, std::int64_t b) { return a.den == 1 && a.num == b; }

    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace aacode
