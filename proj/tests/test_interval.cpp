#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brun/fraction.hpp"
#include "brun/interval.hpp"
#include "interval_oracle.hpp"

#include <boost/math/special_functions/expint.hpp>

#include <cmath>

using namespace brun;
using oracle::Big;

TEST_CASE("randomized soundness against 50-digit arithmetic")
{
    const auto rep = oracle::interval_soundness(20000, 7);
    INFO(rep.first_violation);
    CHECK(rep.cases == 20000);
    CHECK(rep.violations == 0);
}

TEST_CASE("exact operations stay exact")
{
    CHECK((Interval::point(1.5) + Interval::point(2.25)).is_point());
    CHECK((Interval::point(3.0) * Interval::point(7.0)).is_point());
    CHECK((Interval::point(1.0) / Interval::point(4.0)).is_point());
    CHECK(sqrt(Interval::point(9.0)) == Interval::point(3.0));
    const Interval third = Interval::point(1.0) / Interval::point(3.0);
    CHECK(!third.is_point());
    CHECK(third.hi() == std::nextafter(third.lo(), 1.0));
}

int ulps_between(double lo, double hi)
{
    int n = 0;
    while (lo < hi && n < 100) {
        lo = std::nextafter(lo, INFINITY);
        ++n;
    }
    return n;
}

TEST_CASE("point-input widths are a few ulps")
{
    for (double x : {0.3, 1.7, 42.0, 1e10, 3.5e-7}) {
        const Interval X = Interval::point(x);
        for (const Interval r : {log(X), exp(Interval::point(std::fmod(x, 50.0))), sqrt(X), log1p(X)}) {
            CHECK(ulps_between(r.lo(), r.hi()) <= 2 * kLibmUlps + 1);
        }
    }
}

TEST_CASE("decimal literals")
{
    CHECK(Interval::from_decimal("950").is_point());
    const Interval c = Interval::from_decimal("1.0503");
    CHECK(c.lo() < c.hi());
    CHECK(Big(c.lo()) <= Big("1.0503"));
    CHECK(Big("1.0503") <= Big(c.hi()));
    CHECK_THROWS_AS(Interval::from_decimal("1.0x"), IntervalError);
    const Interval big = Interval::from_integer(std::uint64_t{4000000000000000001});
    CHECK(Big(big.lo()) <= Big("4000000000000000001"));
    CHECK(Big("4000000000000000001") <= Big(big.hi()));
}

TEST_CASE("domain errors")
{
    CHECK_THROWS_AS(Interval::make(2.0, 1.0), IntervalError);
    CHECK_THROWS_AS(log(Interval::make(-1.0, 1.0)), IntervalError);
    CHECK_THROWS_AS(Interval::point(1.0) / Interval::make(-1.0, 1.0), IntervalError);
    CHECK_THROWS_AS(intersect(Interval::point(1.0), Interval::point(2.0)), IntervalError);
    CHECK(max(Interval::make(-2.0, -1.0), 0.0) == Interval::point(0.0));
    CHECK(sqr(Interval::make(-2.0, 1.0)) == Interval::make(0.0, 4.0));
}

TEST_CASE("exponential integral E1 against boost at 50 digits")
{
    for (const char* z : {"0.001", "0.25", "1", "2.9", "3", "3.1", "7.5", "20", "100", "700"}) {
        const Big Z(z);
        const Big truth = boost::math::expint(1, Z);
        const Interval r = expint_e1(static_cast<double>(Z));
        const Big zz(static_cast<double>(Z));
        const Big t = boost::math::expint(1, zz);
        CAPTURE(z);
        CHECK(oracle::encloses(r, t));
        CHECK(r.width() <= 1e-12 * r.mag());
        (void)truth;
    }
    // E1(1) = 0.21938393439552...
    CHECK(expint_e1(1.0).contains(0.21938393439552029));
    // Ei(-x) = -E1(x), and the enclosure covers an interval argument.
    const Interval e = ei_neg(Interval::make(-2.0, -1.0));
    CHECK(e.contains(-0.21938393439552029));
    CHECK(e.contains(-0.04890051070806112));
}

TEST_CASE("constants")
{
    CHECK(oracle::encloses(constants::euler_gamma(), Big("0.57721566490153286060651209008240243104")));
    CHECK(oracle::encloses(constants::ln2(), boost::multiprecision::log(Big(2))));
}

TEST_CASE("fractions")
{
    const Fraction f = Fraction::parse("2/5");
    CHECK(f == Fraction{2, 5});
    CHECK(oracle::encloses(f.enclosure(), Big(2) / 5));
    CHECK(Fraction::parse("-4/10") == Fraction{-2, 5});
    CHECK_THROWS(Fraction::parse("2/0"));
    CHECK_THROWS(Fraction::parse("x"));
    const Interval p = pow(Interval::point(10.0), Fraction{2, 5}.enclosure());
    CHECK(oracle::encloses(p, boost::multiprecision::pow(Big(10), Big(2) / 5)));
}
