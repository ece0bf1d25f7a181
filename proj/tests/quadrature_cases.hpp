// Random closed-form quadrature cases shared by the unit tests and the
// acceptance run.
#pragma once

#include "brun/quadrature.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <random>

namespace brun::oracle {

struct QuadratureReport {
    int cases = 0;
    int violations = 0;
};

/// Integrates 1/u and 1/u^2 over random intervals in [0.5, 60] and checks
/// that log(b/a) and 1/a - 1/b lie in the enclosures.
inline QuadratureReport quadrature_closed_forms(int cases, std::uint64_t seed)
{
    using Big = boost::multiprecision::cpp_bin_float_50;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lo(0.5, 50.0), len(0.01, 10.0);
    const quadrature::Integrand inv = [](const Interval& u) { return Interval::point(1.0) / u; };
    const quadrature::Integrand inv2 = [](const Interval& u) { return Interval::point(1.0) / sqr(u); };
    QuadratureReport rep;
    for (int i = 0; i < cases; ++i) {
        const double a = lo(rng), b = a + len(rng);
        const bool square = i % 2;
        const auto r = quadrature::integrate(a, b, square ? inv2 : inv, 1e-6);
        const Big A(a), B(b);
        const Big truth = square ? 1 / A - 1 / B : boost::multiprecision::log(B / A);
        ++rep.cases;
        if (!(Big(r.value.lo()) <= truth && truth <= Big(r.value.hi()))) ++rep.violations;
    }
    return rep;
}

} // namespace brun::oracle
