#include "brun/interval.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>

namespace brun {

using namespace rounding;

namespace {

// Libm result widened outward by kLibmUlps, for a function known to be
// monotone on the argument range.
double libm_down(double v) { return std::isfinite(v) ? widen_down(v, kLibmUlps) : v; }
double libm_up(double v) { return std::isfinite(v) ? widen_up(v, kLibmUlps) : v; }

bool is_plain_integer(std::string_view s)
{
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size() || s.size() - i > 15) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace

Interval Interval::from_integer(std::uint64_t n)
{
    const double d = static_cast<double>(n);
    if (n < (std::uint64_t{1} << 53)) return Interval(d, d);
    // d is at most 2^64, which does not fit: compare through long double.
    const long double back = static_cast<long double>(d);
    const long double exact = static_cast<long double>(n);
    if (back == exact) return Interval(d, d);
    return back > exact ? Interval(next_down(d), d) : Interval(d, next_up(d));
}

Interval Interval::from_integer(std::int64_t n)
{
    if (n >= 0) return from_integer(static_cast<std::uint64_t>(n));
    const Interval m = from_integer(static_cast<std::uint64_t>(-(n + 1)) + 1);
    return -m;
}

Interval Interval::from_decimal(std::string_view text)
{
    if (is_plain_integer(text)) {
        const double v = std::strtod(std::string(text).c_str(), nullptr);
        return Interval(v, v);
    }
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw IntervalError("cannot parse decimal literal '" + std::string(text) + "'");
    }
    return Interval(next_down(v), next_up(v));
}

Interval Interval::ratio(std::int64_t num, std::int64_t den)
{
    return from_integer(num) / from_integer(den);
}

Interval intersect(const Interval& a, const Interval& b)
{
    const double lo = std::fmax(a.lo(), b.lo());
    const double hi = std::fmin(a.hi(), b.hi());
    if (lo > hi) throw IntervalError("intersection of disjoint enclosures");
    return unchecked_interval(lo, hi);
}

Interval sqr(const Interval& a)
{
    if (a.lo() >= 0.0) return unchecked_interval(mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi()));
    if (a.hi() <= 0.0) return unchecked_interval(mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo()));
    const double m = std::fmax(-a.lo(), a.hi());
    return unchecked_interval(0.0, mul_up(m, m));
}

Interval abs(const Interval& a)
{
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return unchecked_interval(0.0, std::fmax(-a.lo(), a.hi()));
}

Interval max(const Interval& a, double c)
{
    return unchecked_interval(std::fmax(a.lo(), c), std::fmax(a.hi(), c));
}

Interval log(const Interval& a)
{
    if (!(a.lo() > 0.0)) throw IntervalError("log of an interval that is not strictly positive");
    // log 1 = 0 exactly; keep it exact so that unit inputs stay points.
    const double lo = a.lo() == 1.0 ? 0.0 : libm_down(std::log(a.lo()));
    const double hi = a.hi() == 1.0 ? 0.0 : libm_up(std::log(a.hi()));
    return unchecked_interval(lo, hi);
}

Interval log1p(const Interval& a)
{
    if (!(a.lo() > -1.0)) throw IntervalError("log1p of an interval reaching -1");
    const double lo = a.lo() == 0.0 ? 0.0 : libm_down(std::log1p(a.lo()));
    const double hi = a.hi() == 0.0 ? 0.0 : libm_up(std::log1p(a.hi()));
    return unchecked_interval(lo, hi);
}

Interval exp(const Interval& a)
{
    const double lo = a.lo() == 0.0 ? 1.0 : std::fmax(0.0, libm_down(std::exp(a.lo())));
    double hi = std::exp(a.hi());
    if (a.hi() == 0.0) {
        hi = 1.0;
    } else {
        hi = (hi == 0.0) ? std::numeric_limits<double>::denorm_min() : libm_up(hi);
    }
    return unchecked_interval(lo, hi);
}

Interval sqrt(const Interval& a)
{
    if (a.lo() < 0.0) throw IntervalError("sqrt of an interval with negative part");
    return unchecked_interval(sqrt_down(a.lo()), sqrt_up(a.hi()));
}

Interval pow(const Interval& a, double exponent)
{
    if (std::isnan(exponent)) throw IntervalError("pow with NaN exponent");
    if (exponent == 0.0) return Interval::point(1.0);
    if (a.lo() < 0.0) throw IntervalError("real power of an interval with negative part");
    if (exponent < 0.0 && a.lo() == 0.0) throw IntervalError("negative power of an interval touching zero");
    auto down = [](double v) { return v == 0.0 ? 0.0 : std::fmax(0.0, libm_down(v)); };
    auto up = [](double v) {
        if (v == 0.0) return std::numeric_limits<double>::denorm_min();
        return libm_up(v);
    };
    const double pl = std::pow(a.lo(), exponent);
    const double ph = std::pow(a.hi(), exponent);
    // pow(0, e > 0) is exactly 0.
    if (exponent > 0.0) {
        return unchecked_interval(down(pl), a.hi() == 0.0 ? 0.0 : up(ph));
    }
    return unchecked_interval(down(ph), up(pl));
}

Interval pow(const Interval& a, int exponent)
{
    if (exponent == 0) return Interval::point(1.0);
    if (exponent < 0) return Interval::point(1.0) / pow(a, -exponent);
    Interval base = a;
    Interval result = Interval::point(1.0);
    bool first = true;
    unsigned e = static_cast<unsigned>(exponent);
    // Even powers go through sqr so that intervals straddling zero stay tight.
    while (e > 0) {
        if (e & 1u) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1;
        if (e) base = sqr(base);
    }
    if (exponent % 2 == 0 && result.lo() < 0.0) result = max(result, 0.0);
    return result;
}

namespace constants {

Interval euler_gamma()
{
    constexpr double g = 0.57721566490153286060651209008240243;
    return unchecked_interval(next_down(g), next_up(g));
}

Interval ln2()
{
    constexpr double l = 0.69314718055994530941723212145817657;
    return unchecked_interval(next_down(l), next_up(l));
}

} // namespace constants

namespace {

// Power series E1(z) = -gamma - ln z - sum_{k>=1} (-z)^k / (k k!).
// For k >= N the terms decrease geometrically once N + 2 > z, giving the
// remainder bound z^{N+1} / ((N+1)(N+1)!) / (1 - z/(N+2)).
Interval e1_series(double z)
{
    const Interval zi = Interval::point(z);
    Interval power_over_fact = Interval::point(1.0); // z^k / k!
    Interval sum;                                     // sum (-1)^{k+1} z^k/(k k!)
    for (int k = 1; k < 400; ++k) {
        power_over_fact = power_over_fact * zi / Interval::point(k);
        const Interval term = power_over_fact / Interval::point(k);
        sum = (k % 2 == 1) ? sum + term : sum - term;
        const int n1 = k + 1;
        if (n1 + 1 > 2.0 * z) {
            const Interval next = power_over_fact * zi / Interval::point(n1) / Interval::point(n1);
            const Interval ratio = Interval::point(1.0) - zi / Interval::point(n1 + 1);
            const double rem = (next / ratio).hi();
            const double scale = std::fmax(sum.mag(), 1e-300);
            // Cut once the remainder is far below the rounding width.
            if (rem < 1e-3 * scale * 0x1p-52) {
                sum = sum + unchecked_interval(-rem, rem);
                return sum - constants::euler_gamma() - log(zi);
            }
        }
    }
    throw IntervalError("E1 power series did not converge");
}

// Stieltjes continued fraction
//   e^z E1(z) = 1/(z + 1/(1 + 1/(z + 2/(1 + 2/(z + 3/(1 + ...))))))
// whose successive approximants bracket the value for z > 0.
Interval e1_cf_scaled(double z, int depth)
{
    const Interval zi = Interval::point(z);
    const Interval one = Interval::point(1.0);
    // Partial denominators alternate z, 1, z, 1, ... after the leading z;
    // partial numerators are 1, 1, 2, 2, 3, 3, ...
    Interval tail = (depth % 2 == 0) ? zi : one;
    for (int j = depth; j >= 1; --j) {
        const Interval numerator = Interval::point(static_cast<double>((j + 1) / 2));
        const Interval denom = (j % 2 == 1) ? zi : one; // denominator at level j-1
        tail = denom + numerator / tail;
    }
    return one / tail;
}

Interval e1_cf(double z)
{
    for (int depth = 8; depth <= (1 << 16); depth *= 2) {
        const Interval a = e1_cf_scaled(z, depth);
        const Interval b = e1_cf_scaled(z, depth + 1);
        const Interval bracket = hull(a, b);
        if (bracket.width() <= 0x1p-48 * bracket.mag() || depth == (1 << 16)) {
            return exp(Interval::point(-z)) * bracket;
        }
    }
    throw IntervalError("E1 continued fraction did not converge");
}

} // namespace

Interval expint_e1(double z)
{
    if (!(z > 0.0) || !std::isfinite(z)) throw IntervalError("E1 needs a finite positive argument");
    return z < 3.0 ? e1_series(z) : e1_cf(z);
}

Interval ei_neg(const Interval& x)
{
    if (!(x.hi() < 0.0)) throw IntervalError("Ei on an interval touching or crossing 0");
    if (std::isinf(x.lo())) throw IntervalError("Ei needs a finite lower endpoint");
    // Ei is decreasing on (-inf, 0): Ei([a,b]) = [Ei(b), Ei(a)] = [-E1(-b), -E1(-a)].
    const Interval at_hi = expint_e1(-x.hi());
    const Interval at_lo = x.is_point() ? at_hi : expint_e1(-x.lo());
    return unchecked_interval(-at_hi.hi(), -at_lo.lo());
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    const auto old = os.precision(17);
    os << '[' << x.lo() << ", " << x.hi() << ']';
    os.precision(old);
    return os;
}

} // namespace brun
