#include "brun/divisor_error.hpp"

#include <cmath>
#include <stdexcept>

namespace brun::divisor {

Interval gamma0() { return hull(Interval::from_decimal("0.5772156"), Interval::from_decimal("0.5772157")); }

Interval gamma1() { return hull(Interval::from_decimal("-0.0728159"), Interval::from_decimal("-0.0728158")); }

Interval main_term(const Interval& log_x)
{
    const Interval g0 = gamma0();
    const Interval two = Interval::point(2.0);
    // Horner form in L keeps the dependency on L to two occurrences.
    return (Interval::point(0.5) * log_x + two * g0) * log_x + (sqr(g0) - two * gamma1());
}

Interval divisor_sum(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("divisor_sum needs x > 0");
    if (x < 1.0) return Interval{};
    if (x >= 0x1p62) throw std::invalid_argument("divisor_sum argument too large");
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;

    // harmonic[a] = H(n / a) for a = 1..s, filled by one upward pass.
    std::vector<Interval> harmonic(s + 1);
    Interval h_s;
    Interval h;
    std::uint64_t a = s;
    for (std::uint64_t m = 1; m <= n; ++m) {
        h += Interval::point(1.0) / Interval::from_integer(m);
        if (m == s) h_s = h;
        while (a >= 1 && n / a == m) {
            harmonic[a] = h;
            --a;
        }
    }

    Interval total;
    for (std::uint64_t b = 1; b <= s; ++b) total += harmonic[b] / Interval::from_integer(b);
    return Interval::point(2.0) * total - sqr(h_s);
}

Interval divisor_error(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("divisor_error needs x > 0");
    return divisor_sum(x) - main_term(log(Interval::point(x)));
}

Interval unit_interval_profile(double x, Fraction alpha)
{
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("unit_interval_profile needs 0 < x < 1");
    const Interval xi = Interval::point(x);
    return abs(main_term(log(xi))) * pow(xi, alpha.enclosure());
}

std::vector<double> unit_interval_critical_points(Fraction alpha)
{
    const double a = alpha.value();
    const double g0 = gamma0().mid();
    const double g1 = gamma1().mid();
    const double qa = a / 2.0;
    const double qb = 2.0 * a * g0 + 1.0;
    const double qc = a * (g0 * g0 - 2.0 * g1) + 2.0 * g0;
    const double disc = qb * qb - 4.0 * qa * qc;
    std::vector<double> roots;
    if (disc < 0.0) return roots;
    const double sq = std::sqrt(disc);
    // Cancellation-free pair of roots.
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    for (const double r : {q / qa, qc / q}) {
        if (r < 0.0) roots.push_back(std::exp(r));
    }
    return roots;
}

namespace {

void consider(DivisorErrorScan& scan, bool& have, const Candidate& c)
{
    if (!have) {
        scan.max_value = c.value;
        scan.argmax = c.x;
        scan.argmax_kind = c.where;
        have = true;
        return;
    }
    if (c.value.hi() > scan.max_value.hi()) {
        scan.argmax = c.x;
        scan.argmax_kind = c.where;
    }
    scan.max_value = unchecked_interval(std::fmax(scan.max_value.lo(), c.value.lo()),
                                        std::fmax(scan.max_value.hi(), c.value.hi()));
}

std::vector<std::uint32_t> divisor_counts(std::uint64_t n)
{
    std::vector<std::uint32_t> d(n + 1, 0);
    for (std::uint64_t i = 1; i <= n; ++i) {
        for (std::uint64_t j = i; j <= n; j += i) ++d[j];
    }
    return d;
}

} // namespace

DivisorErrorScan scan_c(Fraction alpha, const GridSpec& spec)
{
    if (!(Fraction{0, 1} < alpha && alpha < Fraction{1, 2})) {
        throw std::invalid_argument("scan_c needs 0 < alpha < 1/2 (H(-alpha) diverges otherwise)");
    }
    DivisorErrorScan scan;
    scan.alpha = alpha;
    bool have = false;
    const Interval a = alpha.enclosure();

    // (0,1): the sum is empty; the stationary points of the closed form
    // replace gridding. x -> 1^- contributes Q(0).
    bool have_unit = false;
    for (const double x : unit_interval_critical_points(alpha)) {
        Candidate c{x, unit_interval_profile(x, alpha), "critical"};
        scan.grid.push_back(x);
        if (!have_unit || c.value.hi() > scan.unit_max.value.hi()) scan.unit_max = c;
        have_unit = true;
        consider(scan, have, c);
    }
    {
        Candidate c{1.0, abs(main_term(Interval{})), "left-limit"};
        if (!have_unit || c.value.hi() > scan.unit_max.value.hi()) scan.unit_max = c;
        have_unit = true;
        consider(scan, have, c);
    }
    for (unsigned i = 1; i <= spec.unit_samples; ++i) {
        const double x = std::exp(-40.0 + 40.0 * i / (spec.unit_samples + 1.0));
        if (!(x < 1.0)) continue;
        scan.grid.push_back(x);
        consider(scan, have, Candidate{x, unit_interval_profile(x, alpha), "unit-grid"});
    }

    if (spec.x_max < 2.0) return scan;
    const auto n_max = static_cast<std::uint64_t>(std::floor(spec.x_max));
    const auto d = divisor_counts(n_max);
    Interval partial;
    Interval log_right = log(Interval::point(1.0));
    for (std::uint64_t n = 1; n < n_max; ++n) {
        partial += Interval::from_integer(std::uint64_t{d[n]}) / Interval::from_integer(n);
        const Interval xn = Interval::from_integer(n);
        const Interval xn1 = Interval::from_integer(n + 1);
        const Interval log_n = log_right;
        log_right = log(xn1);

        const Interval e_right = partial - main_term(log_n);
        const Interval e_left = partial - main_term(log_right);
        // No interior maximum on [n, n+1): alpha |E| stays below Q'(log n).
        const double e_mag = std::fmax(abs(e_right).hi(), abs(e_left).hi());
        const Interval q_slope = log_n + Interval::point(2.0) * gamma0();
        if (!((a * Interval::point(e_mag)).hi() < q_slope.lo())) {
            throw std::runtime_error("scan_c: interior-maximum exclusion failed on [" + std::to_string(n) + ", " +
                                     std::to_string(n + 1) + ")");
        }

        scan.grid.push_back(static_cast<double>(n));
        consider(scan, have, Candidate{static_cast<double>(n), abs(e_right) * pow(xn, a), "right-of-integer"});
        consider(scan, have, Candidate{static_cast<double>(n + 1), abs(e_left) * pow(xn1, a), "left-limit"});
        for (unsigned j = 1; j <= spec.offsets_per_unit; ++j) {
            const double x = static_cast<double>(n) + static_cast<double>(j) / (spec.offsets_per_unit + 1.0);
            const Interval xi = Interval::point(x);
            const Interval e = partial - main_term(log(xi));
            scan.grid.push_back(x);
            consider(scan, have, Candidate{x, abs(e) * pow(xi, a), "offset"});
        }
        ++scan.integer_points;
    }
    return scan;
}

} // namespace brun::divisor
