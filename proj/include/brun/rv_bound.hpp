// Riesel-Vaughan style upper bound for pi2(x) and the resulting certified
// upper bound on Brun's constant:
//
//   pi2(x) < 8Cx / (log x (log x + F(x))) + kappa x^{1/2},   kappa = 2,
//   F(x)  = max{0, A6 + A7/log x - A8/(x^{alpha/2} log x) - A9/(x^{1/2} log x)},
//   B    <= B(x0) - 2 pi2(x0)/x0 + int_{x0}^inf 16C/(t log t (log t + F(t))) dt + 4 kappa x0^{-1/2}.
//
// The integral is taken in u = log t, where it reads 16C/(u (u + F(e^u))) du;
// beyond the cutoff U it is bounded by 16C/U.
#pragma once

#include "brun/fraction.hpp"
#include "brun/interval.hpp"
#include "brun/quadrature.hpp"
#include "brun/sieve.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace brun::rv {

/// sqrt(1 + (2/3) sqrt(6/5)), the large-sieve constant in place of 3/2.
Interval large_sieve_rho();

struct RVInputs {
    Fraction alpha{2, 5};
    Interval c_alpha;     // |E(x)| x^alpha <= c_alpha.hi
    Interval H_neg_alpha; // H(-alpha) <= H_neg_alpha.hi
    Interval C;           // twin prime constant
    Interval rho;
    /// Replace 24.09391 rho^{1/2} by 19.638 rho^{1/2} in A9.
    bool improved_a9 = false;
};

/// alpha = 2/5, c = 1.0503, H(-2/5) <= 950.05, C in [1.320323, 1.320324],
/// rho = large_sieve_rho().
RVInputs default_inputs();

struct RVParams {
    Fraction alpha{2, 5};
    Interval c_alpha, rho, H_neg_alpha, C;
    Interval A6, A7, A8, A9;
    bool improved_a9 = false;
    bool idealized = false;
};

/// A6 = 9.27436 - 2 log rho, A7 = -5.6646 + log^2 rho - 9.2744 log rho,
/// A8 = 16 C c(alpha) H(-alpha) rho^{alpha/2}, A9 = 24.09391 rho^{1/2}.
/// Throws std::invalid_argument unless 0 < alpha < 1/2.
RVParams derive_params(const RVInputs& in);

/// A6 = 9.27436 and A7 = A8 = A9 = 0 (rho = 1 with the lower-order terms
/// removed); C is taken from `C`.
RVParams idealized_params(const Interval& C);

/// The same parameters collapsed to the endpoints that make F smallest and
/// the integrand largest (A6.lo, A7.lo, A8.hi, A9.hi, C.hi). The upper
/// bound is monotone in each parameter, so this is sound for it.
RVParams worst_case(const RVParams& p);

/// F(e^u) for u = log x.
Interval F_of_log(const Interval& u, const RVParams& p);

/// F(x); throws std::invalid_argument unless x.lo > 1.
Interval F(const Interval& x, const RVParams& p);

/// Coefficient of x^{1/2} in the pi2 bound: 2, or in improved mode
/// x0^{-1/2} + 5.03 / (rho^{1/2} log(x0/rho)), valid for all x >= x0.
Interval sqrt_term_coefficient(const Interval& x0, const RVParams& p, bool improved);

struct Pi2Options {
    bool improved_coefficient = false;
    bool drop_sqrt_term = false;
};

/// Enclosure of 8Cx/(log x (log x + F(x))) + kappa x^{1/2} evaluated at
/// worst_case(params), i.e. the largest bound the parameter ranges allow.
Interval pi2_upper(const Interval& x, const RVParams& p, const Pi2Options& opts = {});

struct UpperBoundOptions {
    double cutoff_u = 20000.0;
    double width_target = 1e-6;
    bool improved_coefficient = false;
    bool drop_sqrt_term = false;
    quadrature::Options quadrature;
};

/// A census point with real-valued x, as used by heuristic projections.
struct CensusPoint {
    Interval x;
    Interval pi2;
    Interval brun;
};

struct UpperBoundTerms {
    Interval brun_x0;
    Interval count_term;  // -2 pi2(x0)/x0
    Interval integral;    // int_{log x0}^{U} 16C/(u(u+F)) du
    Interval tail;        // 16C / U
    Interval sqrt_term;   // 4 kappa x0^{-1/2}
    Interval total;
    Interval F_x0;
    quadrature::Result quadrature;
};

class BoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every term of the upper bound. Throws BoundError when F(x0) = 0 or the
/// cutoff is not beyond log x0.
UpperBoundTerms upper_bound_terms(const CensusPoint& census, const RVParams& params, const UpperBoundOptions& opts);

struct Provenance {
    std::string name;
    std::string source;
    std::string hash;
};

struct BoundCertificate {
    double lower = 0.0;
    double upper = 0.0;
    std::uint64_t x0 = 0;
    std::uint64_t pi2_x0 = 0;
    Interval brun_x0;
    RVParams params;
    double cutoff_u = 0.0;
    /// int_{exp U}^inf dt/(t log^2 t) = 1/U; enters the bound as 16C/U.
    double tail_bound = 0.0;
    UpperBoundTerms terms;
    bool improved = false;
    std::vector<Provenance> inputs_provenance;
};

/// Certified bounds lower = B(x0).lo <= B <= upper.
BoundCertificate brun_upper(const sieve::TwinCensus& census, const RVParams& params, const UpperBoundOptions& opts);

} // namespace brun::rv
