#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brun/projection.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace brun;

namespace {

// C int_2^x dt / log^2 t, as int_{log 2}^{log x} e^u / u^2 du by Gauss-Kronrod.
double pi2_by_quadrature(double x)
{
    const double L = std::log(x);
    const auto f = [L](double u) { return std::exp(u - L) / (u * u); };
    const double scaled = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(2.0), L, 15, 1e-13);
    return projection::twin_constant_mid() * scaled * x;
}

rv::UpperBoundOptions fast()
{
    rv::UpperBoundOptions o;
    o.width_target = 1e-5;
    return o;
}

} // namespace

TEST_CASE("predicted counts")
{
    for (double x : {1e6, 2e16, 1e19, 1e20, 1e40}) {
        CAPTURE(x);
        CHECK(projection::predict_pi2(x) == doctest::Approx(pi2_by_quadrature(x)).epsilon(1e-9));
    }
    CHECK(projection::predict_pi2(1e19) == doctest::Approx(7.2376e15).epsilon(2e-5));
    CHECK(projection::predict_pi2(1e20) == doctest::Approx(6.5155e16).epsilon(2e-5));
    CHECK(std::fabs(projection::predict_pi2(2e16) / 19831847025792.0 - 1.0) < 1e-4);
    CHECK_THROWS_AS(projection::predict_pi2(2.0), std::invalid_argument);
}

TEST_CASE("predicted partial sums")
{
    CHECK(projection::predict_brun_partial(1e80, 1.90216) == doctest::Approx(1.8878).epsilon(5e-5));
    CHECK(projection::predict_brun_partial(1e20, 1.90216) == doctest::Approx(1.84482).epsilon(5e-6));
    CHECK(projection::predict_brun_partial(1e300, 1.9) < 1.9);
    CHECK(1.9 - projection::predict_brun_partial(1e300, 1.9) < 0.004);
    CHECK_THROWS_AS(projection::predict_brun_partial(1.0), std::invalid_argument);
}

TEST_CASE("projected upper bounds")
{
    const auto rows = projection::project_table({19, 20, 80}, projection::kDefaultBAssumed,
                                                rv::derive_params(rv::default_inputs()), fast());
    REQUIRE(rows.size() == 3);
    CHECK(std::fabs(rows[0].upper_pred - 2.2813) < 5e-4);
    CHECK(std::fabs(rows[1].upper_pred - 2.2641) < 5e-4);
    CHECK(std::fabs(rows[2].upper_pred - 1.9998) < 5e-4);
    for (const auto& r : rows) {
        CHECK(!r.rigorous);
        CHECK(r.B_pred < projection::kDefaultBAssumed);
        CHECK(r.pi2_pred > 0.0);
    }
    CHECK_THROWS_AS(projection::project_table({}), std::invalid_argument);
}

TEST_CASE("projected bounds decrease with the census point")
{
    std::vector<int> ks;
    for (int k = 19; k <= 40; k += 3) ks.push_back(k);
    const auto rows = projection::project_table(ks, projection::kDefaultBAssumed,
                                                rv::derive_params(rv::default_inputs()), fast());
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].upper_pred < rows[i - 1].upper_pred);
}
