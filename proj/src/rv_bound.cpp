#include "brun/rv_bound.hpp"

#include <cmath>

namespace brun::rv {

namespace {

Interval lit(const char* text) { return Interval::from_decimal(text); }

Interval pt(double v) { return Interval::point(v); }

} // namespace

Interval large_sieve_rho()
{
    const Interval six_fifths = Interval::ratio(6, 5);
    return sqrt(pt(1.0) + Interval::ratio(2, 3) * sqrt(six_fifths));
}

RVInputs default_inputs()
{
    RVInputs in;
    in.alpha = Fraction{2, 5};
    in.c_alpha = hull(pt(0.0), lit("1.0503"));
    in.H_neg_alpha = hull(pt(1.0), lit("950.05"));
    in.C = hull(lit("1.320323"), lit("1.320324"));
    in.rho = large_sieve_rho();
    return in;
}

RVParams derive_params(const RVInputs& in)
{
    if (!(Fraction{0, 1} < in.alpha && in.alpha < Fraction{1, 2})) {
        throw std::invalid_argument("derive_params needs 0 < alpha < 1/2");
    }
    RVParams p;
    p.alpha = in.alpha;
    p.c_alpha = in.c_alpha;
    p.rho = in.rho;
    p.H_neg_alpha = in.H_neg_alpha;
    p.C = in.C;
    p.improved_a9 = in.improved_a9;

    const Interval log_rho = log(in.rho);
    p.A6 = lit("9.27436") - pt(2.0) * log_rho;
    p.A7 = -lit("5.6646") + sqr(log_rho) - lit("9.2744") * log_rho;
    p.A8 = pt(16.0) * in.C * in.c_alpha * in.H_neg_alpha * pow(in.rho, in.alpha.enclosure() / pt(2.0));
    p.A9 = (in.improved_a9 ? lit("19.638") : lit("24.09391")) * sqrt(in.rho);
    return p;
}

RVParams idealized_params(const Interval& C)
{
    RVParams p;
    p.C = C;
    p.rho = pt(1.0);
    p.A6 = lit("9.27436");
    p.idealized = true;
    return p;
}

RVParams worst_case(const RVParams& p)
{
    RVParams w = p;
    w.A6 = pt(p.A6.lo());
    w.A7 = pt(p.A7.lo());
    w.A8 = pt(p.A8.hi());
    w.A9 = pt(p.A9.hi());
    w.C = pt(p.C.hi());
    return w;
}

Interval F_of_log(const Interval& u, const RVParams& p)
{
    if (!(u.lo() > 0.0)) throw std::invalid_argument("F needs log x > 0");
    const Interval half_alpha_u = p.alpha.enclosure() * u / pt(2.0);
    Interval inner = p.A6 + p.A7 / u;
    if (!(p.A8.lo() == 0.0 && p.A8.hi() == 0.0)) inner -= p.A8 * exp(-half_alpha_u) / u;
    if (!(p.A9.lo() == 0.0 && p.A9.hi() == 0.0)) inner -= p.A9 * exp(-(u / pt(2.0))) / u;
    return max(inner, 0.0);
}

Interval F(const Interval& x, const RVParams& p)
{
    if (!(x.lo() > 1.0)) throw std::invalid_argument("F needs x > 1");
    return F_of_log(log(x), p);
}

Interval sqrt_term_coefficient(const Interval& x0, const RVParams& p, bool improved)
{
    if (!improved) return pt(2.0);
    return pt(1.0) / sqrt(x0) + lit("5.03") / (sqrt(p.rho) * log(x0 / p.rho));
}

Interval pi2_upper(const Interval& x, const RVParams& params, const Pi2Options& opts)
{
    const RVParams p = worst_case(params);
    const Interval lx = log(x);
    const Interval main = pt(8.0) * p.C * x / (lx * (lx + F_of_log(lx, p)));
    if (opts.drop_sqrt_term) return main;
    return main + sqrt_term_coefficient(x, p, opts.improved_coefficient) * sqrt(x);
}

UpperBoundTerms upper_bound_terms(const CensusPoint& census, const RVParams& params, const UpperBoundOptions& opts)
{
    if (!(census.x.lo() > 1.0)) throw BoundError("census point must have x > 1");
    const RVParams w = worst_case(params);
    const Interval u0 = log(census.x);
    const double U = opts.cutoff_u;
    if (!(U > u0.hi())) throw BoundError("cutoff_u must exceed log x0");

    UpperBoundTerms t;
    t.F_x0 = F_of_log(u0, w);
    if (!(t.F_x0.lo() > 0.0)) throw BoundError("F(x0) = 0: choose a larger x0");

    const Interval sixteen_c = pt(16.0) * w.C;
    const quadrature::Integrand integrand = [&](const Interval& u) {
        return sixteen_c / (u * (u + F_of_log(u, w)));
    };
    t.quadrature = quadrature::integrate(u0.hi(), U, integrand, opts.width_target, opts.quadrature);
    // The sliver [u0.lo, u0.hi] left out of the quadrature, bounded above.
    Interval sliver;
    if (u0.lo() < u0.hi()) {
        const double f_hi = integrand(u0).hi();
        sliver = unchecked_interval(0.0, rounding::mul_up(f_hi, u0.width()));
    }
    t.integral = t.quadrature.value + sliver;

    t.brun_x0 = census.brun;
    t.count_term = -(pt(2.0) * census.pi2 / census.x);
    t.tail = sixteen_c / pt(U);
    if (opts.drop_sqrt_term) {
        t.sqrt_term = Interval{};
    } else {
        const Interval kappa = sqrt_term_coefficient(census.x, params, opts.improved_coefficient);
        t.sqrt_term = pt(4.0) * kappa / sqrt(census.x);
    }
    t.total = t.brun_x0 + t.count_term + t.integral + t.tail + t.sqrt_term;
    return t;
}

BoundCertificate brun_upper(const sieve::TwinCensus& census, const RVParams& params, const UpperBoundOptions& opts)
{
    const CensusPoint point{Interval::from_integer(census.x), Interval::from_integer(census.pi2), census.brun_partial};
    BoundCertificate cert;
    cert.terms = upper_bound_terms(point, params, opts);
    cert.lower = census.brun_partial.lo();
    cert.upper = cert.terms.total.hi();
    cert.x0 = census.x;
    cert.pi2_x0 = census.pi2;
    cert.brun_x0 = census.brun_partial;
    cert.params = params;
    cert.cutoff_u = opts.cutoff_u;
    cert.tail_bound = (pt(1.0) / pt(opts.cutoff_u)).hi();
    cert.improved = opts.improved_coefficient || params.improved_a9;
    if (!(cert.lower < cert.upper)) throw BoundError("certificate lower bound is not below the upper bound");
    return cert;
}

} // namespace brun::rv
