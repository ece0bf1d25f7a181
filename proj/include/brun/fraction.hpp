// Exact small rationals for exponents such as alpha = 2/5 or s = -1/3.
#pragma once

#include "brun/interval.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brun {

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction make(std::int64_t n, std::int64_t d)
    {
        if (d == 0) throw std::invalid_argument("fraction with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n, d);
        return g > 1 ? Fraction{n / g, d / g} : Fraction{n, d};
    }

    /// Parses "2/5", "-1/3" or a plain integer.
    static Fraction parse(std::string_view text);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Interval enclosure() const { return Interval::ratio(num, den); }
    Fraction operator-() const { return Fraction{-num, den}; }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }
    friend bool operator<(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
};

/// x^e for x > 0 and an exponent known only as an enclosure.
Interval pow(const Interval& x, const Interval& exponent);

} // namespace brun
