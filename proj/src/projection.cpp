#include "brun/projection.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <stdexcept>

namespace brun::projection {

double twin_constant_mid() { return rv::default_inputs().C.mid(); }

double predict_pi2(double x)
{
    if (!(x > 2.0)) throw std::invalid_argument("predict_pi2 needs x > 2");
    using boost::math::expint;
    const double lx = std::log(x), l2 = std::log(2.0);
    return twin_constant_mid() * ((expint(lx) - x / lx) - (expint(l2) - 2.0 / l2));
}

double predict_brun_partial(double n, double b_assumed)
{
    if (!(n > 1.0)) throw std::invalid_argument("predict_brun_partial needs n > 1");
    return b_assumed - 2.0 * twin_constant_mid() / std::log(n);
}

std::vector<Projection> project_table(const std::vector<int>& ks, double b_assumed, const rv::RVParams& params,
                                      const rv::UpperBoundOptions& opts)
{
    if (ks.empty()) throw std::invalid_argument("project_table needs at least one k");
    std::vector<Projection> out;
    out.reserve(ks.size());
    for (int k : ks) {
        if (k < 1 || k > 300) throw std::invalid_argument("project_table: k must be in [1, 300]");
        Projection p;
        p.k = k;
        const double x = std::pow(10.0, k);
        p.pi2_pred = predict_pi2(x);
        p.B_pred = predict_brun_partial(x, b_assumed);
        const rv::CensusPoint point{Interval::point(x), Interval::point(p.pi2_pred), Interval::point(p.B_pred)};
        p.upper_pred = rv::upper_bound_terms(point, params, opts).total.hi();
        out.push_back(p);
    }
    return out;
}

} // namespace brun::projection
