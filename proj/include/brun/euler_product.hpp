// Upper bounds for H(s) = sum |g(n)| n^{-s} through its Euler product, and
// an enclosure of the twin prime constant C = 2 prod_{p>2} p(p-2)/(p-1)^2.
//
// g is multiplicative with g(p^k) = 0 for k > 3 and
//   g(2) = 0, g(4) = -3/4, g(8) = 1/4,
//   g(p) = 4/(p(p-2)), g(p^2) = -(3p+2)/(p^2(p-2)), g(p^3) = 2/(p^2(p-2))  (p > 2).
#pragma once

#include "brun/fraction.hpp"
#include "brun/interval.hpp"
#include "brun/sieve.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brun::euler {

/// Exact rational with 128-bit parts; enough for g(p^k) with p < 2^40.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static Rational make(__int128 n, __int128 d);
    Interval enclosure() const;
    Rational abs() const { return Rational{num < 0 ? -num : num, den}; }
    friend Rational operator*(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

struct GFactor {
    std::uint64_t p = 0;
    Rational g1, g2, g3; // g(p), g(p^2), g(p^3)
};

/// The local values of g at p. Throws for p < 2 or p >= 2^40.
GFactor g_factor(std::uint64_t p);

/// g(n) by trial factorization; for tests and small n.
Rational g_value(std::uint64_t n);

/// log of the local Euler factor 1 + |g(p)| p^{-s} + |g(p^2)| p^{-2s} + |g(p^3)| p^{-3s}.
Interval g_factor_log(std::uint64_t p, Fraction s);

/// Sum of g_factor_log over p <= cutoff, with the number of primes seen.
struct PrimeSum {
    Interval sum;
    std::uint64_t primes = 0;
};
PrimeSum partial_log_sum(std::uint64_t cutoff, Fraction s, const sieve::SieveOptions& opts = {});

/// sup_{t >= P} (exp(g(t,s)) - 1) t^{2-2alpha}; the supremum is attained at
/// t = P because every term of the ratio decreases for t > 2.
Interval domination_ratio(const Interval& t, Fraction s);

struct HBoundReport {
    std::uint64_t cutoff = 0;
    Fraction s;
    Interval S1;
    std::uint64_t prime_count = 0;
    /// Exponent e = 2 - 2 alpha of the dominating form log(1 + k1 t^{-e}).
    Interval tail_exponent;
    Interval tail_first_term; // -log(1 + k1 P^{-e}) pi(P)
    Interval tail_integral;   // e k1 k2 E1((e-1) log P)
    Interval log_H_upper;     // S1 + both tail terms
    /// [exp(S1), exp(S1 + tail terms)]: lower end from the partial product,
    /// upper end the bound on H(s).
    Interval H_bound;
    double k1 = 0.0;
    double k2 = 0.0;
    /// Set when k1 exceeds its large-P limit 3 by more than 1%; the bound
    /// is valid but loose.
    bool weak = false;
};

class HBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Literal in pi(x) <= (x / log x)(1 + 1.2762 / log x), x > 1.
Interval prime_count_constant();

/// Upper bound for H(s), s = -alpha with 0 < alpha < 1/2, by S1 + S2 with
/// the prime tail bounded through k1 and pi(x) <= k2 x/log x. Throws
/// HBoundError for s outside (-1/2, 0) or P <= 2.
HBoundReport h_bound(std::uint64_t cutoff, Fraction s, const sieve::SieveOptions& opts = {});

/// Enclosure of C from the partial product over 2 < p <= P and the tail
/// bound sum_{p > P} -log(1 - 1/(p-1)^2) <= 2/((P+1)(P-1)) + log((P+1)/(P-1))/6.
Interval twin_constant(std::uint64_t cutoff, const sieve::SieveOptions& opts = {});

} // namespace brun::euler
