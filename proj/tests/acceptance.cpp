// Acceptance run: one PASS/FAIL line per criterion. Opt-in parts are
// reported as SKIPPED unless BRUN_EXTENDED=1 or BRUN_TABLES_DIR is set.
#include "brun/cli.hpp"
#include "brun/divisor_error.hpp"
#include "brun/euler_product.hpp"
#include "brun/projection.hpp"
#include "brun/quadrature.hpp"
#include "brun/rv_bound.hpp"
#include "brun/sieve.hpp"
#include "brun/tables.hpp"
#include "g_oracle.hpp"
#include "interval_oracle.hpp"
#include "quadrature_cases.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace brun;

namespace {

int failures = 0;

void report(int id, const char* what, bool pass, const std::string& detail)
{
    if (!pass) ++failures;
    std::printf("[%s] %d. %s: %s\n", pass ? "PASS" : "FAIL", id, what, detail.c_str());
    std::fflush(stdout);
}

void skipped(int id, const char* what, const std::string& why)
{
    std::printf("[SKIPPED] %d. %s: %s\n", id, what, why.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt_iv(const Interval& x) { return "[" + fmt("%.10g", x.lo()) + ", " + fmt("%.10g", x.hi()) + "]"; }

bool env_on(const char* name)
{
    const char* v = std::getenv(name);
    return v && std::string(v) == "1";
}

std::vector<std::uint64_t> twins_by_trial_division(std::uint64_t limit)
{
    auto prime = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) return false;
        }
        return true;
    };
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (prime(p) && prime(p + 2)) out.push_back(p);
    }
    return out;
}

// Plain sieve of Eratosthenes over all integers; returns (pi, pi2) at n.
std::pair<std::uint64_t, std::uint64_t> plain_counts(std::uint64_t n)
{
    std::vector<bool> composite(n + 3, false);
    for (std::uint64_t i = 2; i * i <= n + 2; ++i) {
        if (!composite[i]) {
            for (std::uint64_t j = i * i; j <= n + 2; j += i) composite[j] = true;
        }
    }
    std::uint64_t pi = 0, pi2 = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        ++pi;
        if (!composite[p + 2]) ++pi2;
    }
    return {pi, pi2};
}

void criterion_1()
{
    const char* what = "Theorem 1 certificate at x0 = 4e18";
    const std::string census = std::string(BRUN_FIXTURES_DIR) + "/census_4e18.json";
    const char* argv[] = {"brun", "certify", "--census", census.c_str(), "--cutoff-u", "20000"};
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = cli::run(6, argv, out, err);
    const double secs = seconds_since(t0);
    if (code != 0) {
        report(1, what, false, "certify exited with " + std::to_string(code) + ": " + err.str());
        return;
    }
    const auto doc = nlohmann::json::parse(out.str());
    const std::string upper_text = doc["upper"].get<std::string>();
    const double upper = std::stod(upper_text);
    const bool pass = upper >= 2.2880 && upper <= 2.288514 && secs <= 300.0;
    report(1, what, pass, "upper = " + upper_text + " (need [2.2880, 2.288514]), " + fmt("%.1f s", secs));
}

void criterion_2()
{
    const char* what = "constants A6..A9 from the default inputs";
    const auto p = rv::derive_params(rv::default_inputs());
    const bool a6 = p.A6.lo() > 8.72606, a7 = p.A7.lo() > -8.13199;
    const bool a8 = p.A8.hi() < 22267.54, a9 = p.A9.hi() < 27.63359;
    std::string detail = "A6.lo = " + fmt("%.9f", p.A6.lo()) + (a6 ? " ok" : " NO") + ", A7.lo = " +
                         fmt("%.9f", p.A7.lo()) + (a7 ? " ok" : " NO") + ", A8.hi = " + fmt("%.6f", p.A8.hi()) +
                         (a8 ? " ok" : " NO (limit 22267.54)") + ", A9.hi = " + fmt("%.8f", p.A9.hi()) +
                         (a9 ? " ok" : " NO (limit 27.63359)");
    report(2, what, a6 && a7 && a8 && a9, detail);

    auto in = rv::default_inputs();
    in.rho = Interval::from_decimal("1.3154");
    const auto q = rv::derive_params(in);
    std::printf("      note: with rho = 1.3154 instead of %.11f: A8.hi = %.6f, A9.hi = %.8f\n", p.rho.mid(), q.A8.hi(),
                q.A9.hi());
}

void criterion_3()
{
    const char* what = "H(-2/5) bound at reduced cutoffs";
    double previous = INFINITY;
    bool pass = true;
    std::string detail;
    double secs_1e8 = 0.0;
    for (std::uint64_t P : {1000000ull, 10000000ull, 100000000ull}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = euler::h_bound(P, Fraction{-2, 5});
        const double secs = seconds_since(t0);
        if (P == 100000000ull) secs_1e8 = secs;
        const double h = r.H_bound.hi();
        pass = pass && std::isfinite(h) && h <= previous;
        previous = h;
        detail += "H(P=" + fmt("%.0e", static_cast<double>(P)) + ") <= " + fmt("%.6f", h) + "; ";
    }
    pass = pass && secs_1e8 <= 120.0;
    detail += fmt("1e8 run %.1f s", secs_1e8);
    report(3, what, pass, detail);

    const char* ext_what = "H(-2/5) bound at P = 1e10 (extended)";
    if (!env_on("BRUN_EXTENDED")) {
        skipped(3, ext_what, "set BRUN_EXTENDED=1 (hours of sieving)");
        return;
    }
    sieve::SieveOptions o;
    o.threads = 0;
    const auto r = euler::h_bound(10000000000ull, Fraction{-2, 5}, o);
    const bool s1 = r.S1.lo() >= 6.85091902765 && r.S1.hi() <= 6.85091902775;
    const bool first = r.tail_first_term.lo() >= -0.0013654 && r.tail_first_term.hi() <= -0.0013652;
    const bool integral = r.tail_integral.hi() <= 0.0069531;
    const bool h = r.H_bound.hi() < 950.05;
    report(3, ext_what, s1 && first && integral && h && r.prime_count == 455052511,
           "S1 = " + fmt_iv(r.S1) + ", first = " + fmt_iv(r.tail_first_term) + ", integral <= " +
               fmt("%.9f", r.tail_integral.hi()) + ", H <= " + fmt("%.4f", r.H_bound.hi()) +
               ", pi(P) = " + std::to_string(r.prime_count));
}

void criterion_4()
{
    const char* what = "divisor sum error constants c(1/3), c(2/5)";
    const auto t0 = std::chrono::steady_clock::now();
    const auto third = divisor::scan_c(Fraction{1, 3});
    const auto two_fifths = divisor::scan_c(Fraction{2, 5});
    const double secs = seconds_since(t0);
    const bool c13 = third.max_value.lo() >= 1.6407 && third.max_value.hi() <= 1.6409;
    const bool near = std::fabs(third.argmax / 7.345e-4 - 1.0) < 1e-3;
    const bool c25 = two_fifths.max_value.hi() <= 1.0503;
    // |E(x)| <= 1.16 x^{-1/3} would mean |E(x)| x^{1/3} <= 1.16 everywhere.
    const bool literature_violated = third.max_value.lo() > 1.16;
    report(4, what, c13 && near && c25 && literature_violated && secs <= 60.0,
           "c(1/3) in " + fmt_iv(third.max_value) + " at x = " + fmt("%.6g", third.argmax) + ", c(2/5) <= " +
               fmt("%.9f", two_fifths.max_value.hi()) + ", 1.16 bound violated: " +
               (literature_violated ? "yes" : "no") + fmt(", %.1f s", secs));
}

void criterion_5()
{
    const char* what = "sieve against independent oracles";
    const auto oracle_twins = twins_by_trial_division(100000);
    const bool list = sieve::sieve_range(2, 100001) == oracle_twins;
    bool counts = true;
    std::size_t idx = 0;
    for (std::uint64_t x = 3; x <= 100000; ++x) {
        while (idx < oracle_twins.size() && oracle_twins[idx] <= x) ++idx;
        if (x % 97 == 0 || x < 1000) counts = counts && sieve::census(x).pi2 == idx;
    }
    const auto [pi, pi2] = plain_counts(1000000);
    const bool at_1e6 = sieve::census(1000000).pi2 == 8169 && pi2 == 8169 &&
                        sieve::prime_count(1000000) == 78498 && pi == 78498;

    const auto t0 = std::chrono::steady_clock::now();
    sieve::SieveOptions one;
    one.threads = 1;
    const auto base = sieve::census(1000000000, one);
    const double secs = seconds_since(t0);
    bool same = true;
    for (unsigned threads : {4u, 8u}) {
        sieve::SieveOptions o;
        o.threads = threads;
        const auto c = sieve::census(1000000000, o);
        same = same && c.pi2 == base.pi2 && c.brun_partial == base.brun_partial;
    }
    report(5, what, list && counts && at_1e6 && same && secs <= 60.0,
           std::string("twin list <= 1e5 ") + (list ? "matches" : "DIFFERS") + ", counts " + (counts ? "match" : "DIFFER") +
               ", pi2(1e6) = 8169 and pi(1e6) = 78498 " + (at_1e6 ? "confirmed" : "NOT confirmed") +
               ", census(1e9) pi2 = " + std::to_string(base.pi2) + fmt(" in %.1f s", secs) + ", threads 1/4/8 " +
               (same ? "identical" : "DIFFER"));
}

void criterion_6()
{
    const char* what = "table bracket 1000d12 -> 1001d12 inside [1.0567e-6, 1.0678e-6]";
    const auto t = tables::parse_table("1000d12 1177209242304 1177208491858.251\n"
                                       "1001d12 1178316017996 1178315253072.811\n");
    const Interval b = tables::bracket_contribution(t[0], t[1]);
    report(6, what, b.lo() >= 1.0567e-6 && b.hi() <= 1.0678e-6,
           "enclosure " + fmt_iv(b) + " = 1106775692 x [2/1001e12, 2/1000e12]");

    const char* full_what = "extension from B(1e12) along the published tables";
    const char* dir = std::getenv("BRUN_TABLES_DIR");
    if (!dir || !*dir) {
        skipped(6, full_what, "set BRUN_TABLES_DIR to the published census tables");
        return;
    }
    std::vector<std::vector<tables::CensusTableEntry>> loaded;
    for (const auto& f : std::filesystem::directory_iterator(dir)) {
        if (f.path().extension() == ".txt") loaded.push_back(tables::load_table_file(f.path()));
    }
    const auto win = tables::window(tables::merge_tables(loaded), 1000000000000ull, 4000000000000000000ull);
    if (win.empty() || win.front().threshold != 1000000000000ull || win.back().threshold != 4000000000000000000ull) {
        report(6, full_what, false, "tables do not span [1e12, 4e18]");
        return;
    }
    const sieve::TwinCensus base{win.front().threshold, win.front().pi2,
                                 hull(Interval::from_decimal("1.8065924"), Interval::from_decimal("1.8065925"))};
    const auto ext = tables::extend_brun(base, win);
    report(6, full_what, ext.brun_partial.lo() >= 1.840503 && ext.brun_partial.hi() <= 1.840518,
           "B(4e18) in " + fmt_iv(ext.brun_partial) + ", pi2 = " + std::to_string(ext.pi2));
}

void criterion_7()
{
    const Interval c = euler::twin_constant(1000000);
    report(7, "twin prime constant from primes below 1e6", c.lo() >= 1.320323 && c.hi() <= 1.320324,
           "C in " + fmt_iv(c));
}

void criterion_8()
{
    rv::UpperBoundOptions o;
    o.drop_sqrt_term = true;
    const sieve::TwinCensus census{4000000000000000000ull, 3023463123235320ull,
                                   hull(Interval::from_decimal("1.840503"), Interval::from_decimal("1.840518"))};
    const auto c = rv::brun_upper(census, rv::idealized_params(rv::default_inputs().C), o);
    report(8, "idealized constants (A6 = 9.27436, A7 = A8 = A9 = 0, no sqrt term)",
           std::fabs(c.upper - 2.28545) <= 5e-5, "upper = " + fmt("%.8f", c.upper) + " (need 2.28545 +- 5e-5)");
}

void criterion_9()
{
    const auto rows = projection::project_table({19, 20, 80});
    const double upper_paper[] = {2.2813, 2.2641, 1.9998};
    // B predictions are compared to one unit in the last displayed digit.
    const double b_paper[] = {1.84181, 1.84482, 1.8878};
    const double b_unit[] = {1e-5, 1e-5, 1e-4};
    bool pass = rows.size() == 3;
    std::string detail;
    for (std::size_t i = 0; i < rows.size() && i < 3; ++i) {
        const bool up = std::fabs(rows[i].upper_pred - upper_paper[i]) <= 5e-4;
        const bool b = std::fabs(rows[i].B_pred - b_paper[i]) <= b_unit[i];
        pass = pass && up && b && !rows[i].rigorous;
        detail += "k=" + std::to_string(rows[i].k) + ": upper " + fmt("%.5f", rows[i].upper_pred) + " vs " +
                  fmt("%.4f", upper_paper[i]) + ", B " + fmt("%.6f", rows[i].B_pred) + " vs " +
                  fmt("%.5f", b_paper[i]) + "; ";
    }
    report(9, "heuristic projections at 10^19, 10^20, 10^80", pass, detail);
}

void criterion_10()
{
    const auto iv = oracle::interval_soundness(100000, 20240601);
    const auto q = oracle::quadrature_closed_forms(100, 20240602);

    bool multiplicative = true;
    for (std::uint64_t n = 1; n <= 10000 && multiplicative; ++n) {
        multiplicative = oracle::as_big(euler::g_value(n)) == oracle::g_oracle(n);
    }
    for (std::uint64_t m = 2; m <= 100 && multiplicative; ++m) {
        for (std::uint64_t n = 2; m * n <= 10000; ++n) {
            if (std::gcd(m, n) != 1) continue;
            if (!(oracle::as_big(euler::g_value(m * n)) ==
                  oracle::as_big(euler::g_value(m)) * oracle::as_big(euler::g_value(n)))) {
                multiplicative = false;
                break;
            }
        }
    }

    const quadrature::Integrand inv = [](const Interval& u) { return Interval::point(1.0) / u; };
    bool q_nested = true;
    Interval previous = quadrature::integrate(2.0, 30.0, inv, 1e-3).value;
    for (double w = 5e-4; w >= 1e-6; w /= 2) {
        const Interval v = quadrature::integrate(2.0, 30.0, inv, w).value;
        q_nested = q_nested && v.subset_of(previous);
        previous = v;
    }

    bool t_nested = true;
    const std::vector<std::uint64_t> fine_th{100000, 130000, 170000, 220000, 300000};
    std::vector<tables::CensusTableEntry> fine;
    for (auto th : fine_th) {
        tables::CensusTableEntry e;
        e.threshold = th;
        e.pi2 = sieve::census(th).pi2;
        fine.push_back(e);
    }
    const auto base = sieve::census(100000);
    const std::vector<tables::CensusTableEntry> coarse{fine.front(), fine.back()};
    const Interval c = tables::extend_brun(base, coarse).brun_partial;
    const Interval f = tables::extend_brun(base, fine).brun_partial;
    t_nested = f.subset_of(c) && sieve::census(300000).brun_partial.subset_of(f);

    report(10, "property suites", iv.violations == 0 && q.violations == 0 && multiplicative && q_nested && t_nested,
           "interval soundness " + std::to_string(iv.violations) + "/" + std::to_string(iv.cases) +
               " violations, quadrature closed forms " + std::to_string(q.violations) + "/" + std::to_string(q.cases) +
               ", g multiplicative n <= 1e4 " + (multiplicative ? "yes" : "NO") + ", quadrature refinement " +
               (q_nested ? "nested" : "NOT nested") + ", table refinement " + (t_nested ? "nested" : "NOT nested"));
}

} // namespace

int main()
{
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7, criterion_8,
                                                      criterion_9, criterion_10};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
        }
    }
    std::printf("%d failing criteria\n", failures);
    return failures == 0 ? 0 : 1;
}
