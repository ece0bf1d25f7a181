// Hardy-Littlewood heuristics for twin primes beyond the census:
//   pi2(x) ~ C int_2^x dt / log^2 t,   B(n) ~ B - 2C / log n.
// Nothing here is rigorous; every output is marked as a projection.
#pragma once

#include "brun/interval.hpp"
#include "brun/rv_bound.hpp"

#include <vector>

namespace brun::projection {

/// Conjectured value of B used as the default projection basis.
inline constexpr double kDefaultBAssumed = 1.9021605832;

/// Midpoint of the twin prime constant enclosure used for predictions.
double twin_constant_mid();

/// C int_2^x dt/log^2 t = C (li(x) - x/log x - li(2) + 2/log 2). Requires x > 2.
double predict_pi2(double x);

/// B_assumed - 2C/log n. Requires n > 1.
double predict_brun_partial(double n, double b_assumed = kDefaultBAssumed);

struct Projection {
    int k = 0;
    double B_pred = 0.0;
    double pi2_pred = 0.0;
    double upper_pred = 0.0;
    bool rigorous = false;
};

/// Runs the upper bound on the synthetic census (10^k, predicted pi2,
/// predicted B(10^k)) for each k. Throws std::invalid_argument on an empty
/// list; rv::BoundError propagates.
std::vector<Projection> project_table(const std::vector<int>& ks, double b_assumed = kDefaultBAssumed,
                                      const rv::RVParams& params = rv::derive_params(rv::default_inputs()),
                                      const rv::UpperBoundOptions& opts = {});

} // namespace brun::projection
