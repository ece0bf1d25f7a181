// Error term of the divisor sum sum_{n<=x} d(n)/n against its asymptotic
// expansion, and numerical search for constants c(alpha) with
// |E(x)| x^alpha <= c(alpha).
#pragma once

#include "brun/fraction.hpp"
#include "brun/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace brun::divisor {

/// 0.5772156 < gamma_0 < 0.5772157.
Interval gamma0();
/// -0.0728159 < gamma_1 < -0.0728158.
Interval gamma1();

/// Q(L) = L^2/2 + 2 gamma_0 L + gamma_0^2 - 2 gamma_1, so that
/// E(x) = sum_{n<=x} d(n)/n - Q(log x).
Interval main_term(const Interval& log_x);

/// Enclosure of sum_{n<=x} d(n)/n, via the hyperbola identity
/// 2 sum_{a<=s} H(floor(x/a))/a - H(s)^2 with s = floor(sqrt x) and H the
/// harmonic numbers. x < 1 gives the empty sum [0,0]. Throws on x <= 0.
Interval divisor_sum(double x);

/// E(x). Throws on x <= 0.
Interval divisor_error(double x);

/// |E(x)| x^alpha for x in (0,1), where the sum is empty and E is -Q(log x).
Interval unit_interval_profile(double x, Fraction alpha);

struct GridSpec {
    /// Upper end of the integer part of the grid; values below 1 restrict
    /// the scan to (0,1).
    double x_max = 1e5;
    /// Extra interior samples per unit step [n, n+1).
    unsigned offsets_per_unit = 0;
    /// Log-spaced samples on (0,1) in addition to the critical points.
    unsigned unit_samples = 0;
};

struct Candidate {
    double x = 0.0;
    Interval value; // |E(x)| x^alpha
    std::string where; // "critical", "unit-grid", "right-of-integer", "left-limit", "offset"
};

struct DivisorErrorScan {
    Fraction alpha;
    std::vector<double> grid;
    Interval max_value;
    double argmax = 0.0;
    std::string argmax_kind;
    /// Best value on (0,1), from the critical-point solve.
    Candidate unit_max;
    std::uint64_t integer_points = 0;
};

/// Stationary points of Q(L) e^{alpha L} on L < 0, i.e. real roots of
/// (alpha/2) L^2 + (2 alpha gamma_0 + 1) L + alpha (gamma_0^2 - 2 gamma_1) + 2 gamma_0.
std::vector<double> unit_interval_critical_points(Fraction alpha);

/// Grid maximum of |E(x)| x^alpha. On each [n, n+1) the maximum of
/// |E(x)| x^alpha sits at x = n or at the left limit x -> n+1 (E is
/// strictly decreasing there and alpha |E| < Q'), so both are evaluated.
/// Throws std::invalid_argument unless 0 < alpha < 1/2.
DivisorErrorScan scan_c(Fraction alpha, const GridSpec& grid = {});

} // namespace brun::divisor
