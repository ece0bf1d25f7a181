#include "brun/euler_product.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace brun::euler {

namespace {

__int128 gcd128(__int128 a, __int128 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Enclosure of a nonnegative 128-bit integer: split into two 64-bit halves.
Interval enclose_u128(unsigned __int128 v)
{
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    const auto lo = static_cast<std::uint64_t>(v);
    const Interval low = Interval::from_integer(lo);
    if (hi == 0) return low;
    return Interval::from_integer(hi) * Interval::point(0x1p64) + low;
}

Interval enclose_i128(__int128 v)
{
    return v < 0 ? -enclose_u128(static_cast<unsigned __int128>(-v)) : enclose_u128(static_cast<unsigned __int128>(v));
}

} // namespace

Rational Rational::make(__int128 n, __int128 d)
{
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const __int128 g = gcd128(n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
}

Interval Rational::enclosure() const { return enclose_i128(num) / enclose_i128(den); }

Rational operator*(const Rational& a, const Rational& b)
{
    const __int128 g1 = gcd128(a.num, b.den);
    const __int128 g2 = gcd128(b.num, a.den);
    const __int128 n1 = g1 ? a.num / g1 : a.num, d2 = g1 ? b.den / g1 : b.den;
    const __int128 n2 = g2 ? b.num / g2 : b.num, d1 = g2 ? a.den / g2 : a.den;
    return Rational::make(n1 * n2, d1 * d2);
}

GFactor g_factor(std::uint64_t p)
{
    if (p < 2) throw std::invalid_argument("g_factor needs a prime p >= 2");
    if (p >= (std::uint64_t{1} << 40)) throw std::invalid_argument("g_factor: p too large for exact rationals");
    if (p == 2) return GFactor{2, Rational{0, 1}, Rational{-3, 4}, Rational{1, 4}};
    const __int128 q = p;
    return GFactor{p, Rational::make(4, q * (q - 2)), Rational::make(-(3 * q + 2), q * q * (q - 2)),
                   Rational::make(2, q * q * (q - 2))};
}

Rational g_value(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("g_value needs n >= 1");
    Rational result{1, 1};
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k > 3) return Rational{0, 1};
        const GFactor f = g_factor(p);
        result = result * (k == 1 ? f.g1 : k == 2 ? f.g2 : f.g3);
        if (result.num == 0) return Rational{0, 1};
    }
    if (n > 1) result = result * g_factor(n).g1;
    return result.num == 0 ? Rational{0, 1} : result;
}

Interval g_factor_log(std::uint64_t p, Fraction s)
{
    if (p < 2) throw std::invalid_argument("g_factor_log needs a prime p >= 2");
    const Interval t = Interval::from_integer(p);
    // t^{-s}; the exponent is an enclosure since s is rational.
    const Interval w1 = pow(t, (-s).enclosure());
    const Interval w2 = sqr(w1);
    const Interval w3 = w1 * w2;
    if (p == 2) {
        return log1p(Interval::ratio(3, 4) * w2 + Interval::ratio(1, 4) * w3);
    }
    const Interval tm2 = t - Interval::point(2.0);
    const Interval t2tm2 = sqr(t) * tm2;
    const Interval inner = Interval::point(4.0) / (t * tm2) * w1 +
                           (Interval::point(3.0) * t + Interval::point(2.0)) / t2tm2 * w2 +
                           Interval::point(2.0) / t2tm2 * w3;
    return log1p(inner);
}

PrimeSum partial_log_sum(std::uint64_t cutoff, Fraction s, const sieve::SieveOptions& opts)
{
    using namespace rounding;
    PrimeSum total;
    if (cutoff < 2) return total;
    total.sum = g_factor_log(2, s);
    total.primes = 1;
    if (cutoff < 3) return total;

    struct Block {
        double lo = 0.0, hi = 0.0;
        std::uint64_t count = 0;
    };
    const sieve::Segmenter seg(cutoff + 1, opts.segment_bytes);
    const auto blocks = sieve::map_blocks<Block>(3, cutoff + 1, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        Block b;
        sieve::for_each_odd_prime(seg, lo, hi, [&](std::uint64_t p) {
            const Interval term = g_factor_log(p, s);
            b.lo = add_down(b.lo, term.lo());
            b.hi = add_up(b.hi, term.hi());
            ++b.count;
        });
        return b;
    });
    double lo = total.sum.lo(), hi = total.sum.hi();
    for (const auto& b : blocks) {
        lo = add_down(lo, b.lo);
        hi = add_up(hi, b.hi);
        total.primes += b.count;
    }
    total.sum = Interval::make(lo, hi);
    return total;
}

Interval domination_ratio(const Interval& t, Fraction s)
{
    // (exp(g) - 1) t^{2-2a} = 4 t^{1-a}/(t-2) + (3t+2)/(t-2) + 2 t^a/(t-2), a = -s.
    const Interval a = (-s).enclosure();
    const Interval tm2 = t - Interval::point(2.0);
    return (Interval::point(4.0) * pow(t, Interval::point(1.0) - a) +
            (Interval::point(3.0) * t + Interval::point(2.0)) + Interval::point(2.0) * pow(t, a)) /
           tm2;
}

Interval prime_count_constant() { return Interval::from_decimal("1.2762"); }

HBoundReport h_bound(std::uint64_t cutoff, Fraction s, const sieve::SieveOptions& opts)
{
    if (!(Fraction{-1, 2} < s)) throw HBoundError("h_bound needs s > -1/2 (H(s) diverges otherwise)");
    if (!(s < Fraction{0, 1})) throw HBoundError("h_bound needs s = -alpha with alpha > 0");
    if (cutoff <= 2) throw HBoundError("h_bound needs a cutoff P > 2");

    HBoundReport r;
    r.cutoff = cutoff;
    r.s = s;
    const Interval alpha = (-s).enclosure();
    const Interval one = Interval::point(1.0);
    const Interval P = Interval::from_integer(cutoff);
    const Interval logP = log(P);

    const PrimeSum ps = partial_log_sum(cutoff, s, opts);
    r.S1 = ps.sum;
    r.prime_count = ps.primes;

    // k1 dominates the ratio at t = P, hence for all t >= P.
    const Interval ratio_at_P = domination_ratio(P, s);
    if (!std::isfinite(ratio_at_P.hi())) throw HBoundError("no admissible k1: domination ratio is unbounded");
    r.k1 = rounding::next_up(ratio_at_P.hi());
    double previous = ratio_at_P.hi();
    for (double factor : {2.0, 10.0, 1e3, 1e6, 1e12}) {
        const double t = static_cast<double>(cutoff) * factor;
        const Interval rt = domination_ratio(Interval::point(t), s);
        if (!(rt.hi() <= r.k1) || rt.lo() > previous) {
            throw HBoundError("no admissible k1: domination check failed at t = " + std::to_string(t));
        }
        previous = rt.hi();
    }
    r.weak = r.k1 > 3.03;

    const Interval k1 = Interval::point(r.k1);
    const Interval k2 = one + prime_count_constant() / logP;
    r.k2 = k2.hi();
    r.tail_exponent = Interval::point(2.0) - Interval::point(2.0) * alpha;

    r.tail_first_term = -(log1p(k1 * pow(P, -r.tail_exponent)) * Interval::from_integer(r.prime_count));
    // integral_P^inf t^{-e}/log t dt = E1((e-1) log P) = -Ei(-(e-1) log P).
    const Interval ei = ei_neg(-((r.tail_exponent - one) * logP));
    r.tail_integral = -(r.tail_exponent * k1 * Interval::point(r.k2) * ei);

    r.log_H_upper = r.S1 + r.tail_first_term + r.tail_integral;
    r.H_bound = Interval::make(exp(r.S1).lo(), exp(r.log_H_upper).hi());
    return r;
}

Interval twin_constant(std::uint64_t cutoff, const sieve::SieveOptions& opts)
{
    using namespace rounding;
    if (cutoff < 3) throw std::invalid_argument("twin_constant needs P >= 3");
    struct Block {
        double lo = 0.0, hi = 0.0;
    };
    const sieve::Segmenter seg(cutoff + 1, opts.segment_bytes);
    const auto blocks = sieve::map_blocks<Block>(3, cutoff + 1, opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
        Block b;
        sieve::for_each_odd_prime(seg, lo, hi, [&](std::uint64_t p) {
            const Interval pm1 = Interval::from_integer(p - 1);
            const Interval term = log1p(-(Interval::point(1.0) / sqr(pm1)));
            b.lo = add_down(b.lo, term.lo());
            b.hi = add_up(b.hi, term.hi());
        });
        return b;
    });
    double lo = 0.0, hi = 0.0;
    for (const auto& b : blocks) {
        lo = add_down(lo, b.lo);
        hi = add_up(hi, b.hi);
    }
    const Interval log_partial = Interval::make(lo, hi);

    // Primes above 3 are +-1 mod 6: at most two in each run of six integers.
    const Interval P = Interval::from_integer(cutoff);
    const Interval one = Interval::point(1.0);
    const Interval tail = Interval::point(2.0) / ((P + one) * (P - one)) +
                          log1p(Interval::point(2.0) / (P - one)) / Interval::point(6.0);
    const Interval log_c = unchecked_interval(sub_down(log_partial.lo(), tail.hi()), log_partial.hi());
    return Interval::point(2.0) * exp(log_c);
}

} // namespace brun::euler
