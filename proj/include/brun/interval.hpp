// Closed real intervals with double endpoints and outward rounding.
//
// Rounding is done after the fact: the round-to-nearest result of each
// operation is moved one representable value outward only when an
// error-free transformation (TwoSum, FMA residual) shows the result is
// inexact in that direction. Exact results stay exact, so [1,1] + [2,2]
// is [3,3]. No hardware rounding-mode switches are involved, which keeps
// every operation reentrant.
//
// Transcendentals use the C library in round-to-nearest and widen the
// result by kLibmUlps units in the last place on each side.
#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace brun {

/// Raised when an operation cannot produce a usable enclosure: invalid
/// endpoints, division by an interval containing zero, domain violations.
class IntervalError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Products and quotients below this magnitude may have an inexact FMA
/// residual (gradual underflow), so they are nudged unconditionally.
inline constexpr double kTiny = 0x1p-960;

inline double next_up(double x) { return std::nextafter(x, kInf); }
inline double next_down(double x) { return std::nextafter(x, -kInf); }

inline double widen_up(double x, int ulps)
{
    for (int i = 0; i < ulps; ++i) x = next_up(x);
    return x;
}

inline double widen_down(double x, int ulps)
{
    for (int i = 0; i < ulps; ++i) x = next_down(x);
    return x;
}

// Error of s = fl(a + b) by Knuth's TwoSum; exact whenever s is finite.
inline double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        if (s == kInf && std::isfinite(a) && std::isfinite(b)) return std::numeric_limits<double>::max();
        return s;
    }
    return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

inline double add_up(double a, double b)
{
    const double s = a + b;
    if (!std::isfinite(s)) {
        if (s == -kInf && std::isfinite(a) && std::isfinite(b)) return std::numeric_limits<double>::lowest();
        return s;
    }
    return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * inf is taken as 0: an infinite endpoint stands for "unbounded", and
// a zero factor annihilates any finite value it could represent.
inline double mul_down(double a, double b)
{
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) {
        if (std::isfinite(a) && std::isfinite(b) && p == kInf) return std::numeric_limits<double>::max();
        return p;
    }
    if (std::fabs(p) < kTiny) return next_down(p);
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

inline double mul_up(double a, double b)
{
    if (a == 0.0 || b == 0.0) return 0.0;
    const double p = a * b;
    if (!std::isfinite(p)) {
        if (std::isfinite(a) && std::isfinite(b) && p == -kInf) return std::numeric_limits<double>::lowest();
        return p;
    }
    if (std::fabs(p) < kTiny) return next_up(p);
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

// Sign of (a/b - q) equals sign(r) * sign(b) with r = a - q*b computed exactly.
inline double div_down(double a, double b)
{
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) {
        if (std::isfinite(a) && q == kInf) return std::numeric_limits<double>::max();
        return q;
    }
    if (std::fabs(q) < kTiny || std::isinf(b)) return next_down(q);
    const double r = std::fma(-q, b, a);
    const bool below = (r > 0 && b < 0) || (r < 0 && b > 0);
    return below ? next_down(q) : q;
}

inline double div_up(double a, double b)
{
    if (a == 0.0) return 0.0;
    const double q = a / b;
    if (!std::isfinite(q)) {
        if (std::isfinite(a) && q == -kInf) return std::numeric_limits<double>::lowest();
        return q;
    }
    if (std::fabs(q) < kTiny || std::isinf(b)) return next_up(q);
    const double r = std::fma(-q, b, a);
    const bool above = (r > 0 && b > 0) || (r < 0 && b < 0);
    return above ? next_up(q) : q;
}

inline double sqrt_down(double x)
{
    const double s = std::sqrt(x);
    if (s == 0.0 || !std::isfinite(s)) return s;
    return std::fma(-s, s, x) < 0 ? next_down(s) : s;
}

inline double sqrt_up(double x)
{
    const double s = std::sqrt(x);
    if (s == 0.0 || !std::isfinite(s)) return s;
    return std::fma(-s, s, x) > 0 ? next_up(s) : s;
}

} // namespace rounding

class Interval {
public:
    constexpr Interval() = default;

    /// Exact pair, no rounding. Throws IntervalError on lo > hi or NaN.
    static Interval make(double lo, double hi)
    {
        if (std::isnan(lo) || std::isnan(hi)) throw IntervalError("interval endpoint is NaN");
        if (lo > hi) throw IntervalError("interval lower endpoint exceeds upper endpoint");
        return Interval(lo, hi);
    }

    static Interval point(double v) { return make(v, v); }

    /// Smallest double interval containing the integer n.
    static Interval from_integer(std::uint64_t n);
    static Interval from_integer(std::int64_t n);

    /// Enclosure of a decimal literal such as "1.320323"; integers below
    /// 2^53 and exactly representable literals come back as points.
    static Interval from_decimal(std::string_view text);

    /// Enclosure of the rational num/den.
    static Interval ratio(std::int64_t num, std::int64_t den);

    static Interval whole() { return Interval(-rounding::kInf, rounding::kInf); }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return lo_ == hi_ ? lo_ : 0.5 * lo_ + 0.5 * hi_; }
    double width() const { return rounding::sub_up(hi_, lo_); }
    double mag() const { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }

    bool is_point() const { return lo_ == hi_; }
    bool contains(double v) const { return lo_ <= v && v <= hi_; }
    bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
    bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
    bool positive() const { return lo_ > 0.0; }
    bool negative() const { return hi_ < 0.0; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    constexpr Interval(double lo, double hi) : lo_(lo), hi_(hi) {}

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    friend Interval hull(const Interval& a, const Interval& b);
    friend Interval unchecked_interval(double lo, double hi);

    double lo_ = 0.0;
    double hi_ = 0.0;
};

// For internal use by code that has already established lo <= hi.
inline Interval unchecked_interval(double lo, double hi) { return Interval(lo, hi); }

inline Interval operator+(const Interval& a, const Interval& b)
{
    return Interval(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
}

inline Interval operator-(const Interval& a, const Interval& b)
{
    return Interval(rounding::sub_down(a.lo_, b.hi_), rounding::sub_up(a.hi_, b.lo_));
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_); }

inline Interval operator*(const Interval& a, const Interval& b)
{
    using namespace rounding;
    if (a.lo_ >= 0.0 && b.lo_ >= 0.0) {
        return Interval(mul_down(a.lo_, b.lo_), mul_up(a.hi_, b.hi_));
    }
    const double l1 = mul_down(a.lo_, b.lo_), l2 = mul_down(a.lo_, b.hi_);
    const double l3 = mul_down(a.hi_, b.lo_), l4 = mul_down(a.hi_, b.hi_);
    const double h1 = mul_up(a.lo_, b.lo_), h2 = mul_up(a.lo_, b.hi_);
    const double h3 = mul_up(a.hi_, b.lo_), h4 = mul_up(a.hi_, b.hi_);
    return Interval(std::fmin(std::fmin(l1, l2), std::fmin(l3, l4)),
                    std::fmax(std::fmax(h1, h2), std::fmax(h3, h4)));
}

inline Interval operator/(const Interval& a, const Interval& b)
{
    using namespace rounding;
    if (b.contains_zero()) throw IntervalError("division by an interval containing zero");
    if (a.lo_ >= 0.0 && b.lo_ > 0.0) {
        return Interval(div_down(a.lo_, b.hi_), div_up(a.hi_, b.lo_));
    }
    const double l1 = div_down(a.lo_, b.lo_), l2 = div_down(a.lo_, b.hi_);
    const double l3 = div_down(a.hi_, b.lo_), l4 = div_down(a.hi_, b.hi_);
    const double h1 = div_up(a.lo_, b.lo_), h2 = div_up(a.lo_, b.hi_);
    const double h3 = div_up(a.hi_, b.lo_), h4 = div_up(a.hi_, b.hi_);
    return Interval(std::fmin(std::fmin(l1, l2), std::fmin(l3, l4)),
                    std::fmax(std::fmax(h1, h2), std::fmax(h3, h4)));
}

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

inline Interval hull(const Interval& a, const Interval& b)
{
    return Interval(std::fmin(a.lo_, b.lo_), std::fmax(a.hi_, b.hi_));
}

/// Intersection; throws if the intervals are disjoint (two enclosures of the
/// same quantity that do not overlap mean something upstream is wrong).
Interval intersect(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
Interval abs(const Interval& a);
/// max(a, c) pointwise, for clamping.
Interval max(const Interval& a, double c);

// Elementary functions. Each throws IntervalError outside its domain.
Interval log(const Interval& a);   // needs lo > 0
Interval log1p(const Interval& a); // needs lo > -1
Interval exp(const Interval& a);
Interval sqrt(const Interval& a);  // needs lo >= 0
/// a^exponent for real exponent; needs lo >= 0 (lo > 0 when exponent < 0).
Interval pow(const Interval& a, double exponent);
/// Integer power by repeated squaring with sign handling.
Interval pow(const Interval& a, int exponent);

/// E1(z) = integral from z to infinity of exp(-t)/t dt, for a point z > 0.
Interval expint_e1(double z);

/// Ei on negative arguments, Ei(x) = -E1(-x). Requires x.hi < 0.
Interval ei_neg(const Interval& x);

namespace constants {
/// Euler's constant to full double precision (not the 7-digit enclosure
/// used for the divisor-sum error).
Interval euler_gamma();
Interval ln2();
} // namespace constants

/// Ulps of widening applied to libm results.
inline constexpr int kLibmUlps = 2;

std::ostream& operator<<(std::ostream& os, const Interval& x);

} // namespace brun
