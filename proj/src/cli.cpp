#include "brun/cli.hpp"

#include "brun/divisor_error.hpp"
#include "brun/euler_product.hpp"
#include "brun/fraction.hpp"
#include "brun/projection.hpp"
#include "brun/quadrature.hpp"
#include "brun/rv_bound.hpp"
#include "brun/sieve.hpp"
#include "brun/tables.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>

namespace brun::cli {

using json = nlohmann::ordered_json;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string shortest(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

bool exact_integer(double v) { return std::isfinite(v) && v == std::trunc(v) && std::fabs(v) <= 0x1p53; }

json interval_json(const Interval& x) { return json{{"lo", decimal_lo(x.lo())}, {"hi", decimal_hi(x.hi())}}; }

Interval parse_decimal(const std::string& text, const char* what)
{
    try {
        return Interval::from_decimal(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": '" + text + "' is not a decimal number");
    }
}

std::uint64_t parse_integer_option(const std::string& text, const char* what)
{
    try {
        return parse_integer_literal(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string(what) + ": '" + text + "' is not a positive integer");
    }
}

Fraction parse_fraction(const std::string& text)
{
    try {
        return Fraction::parse(text);
    } catch (const std::exception&) {
        throw UsageError("--alpha: '" + text + "' is not a fraction p/q");
    }
}

json header(const char* command)
{
    return json{{"tool", kToolVersion}, {"command", command}};
}

void emit(const json& doc, const std::string& out_path, std::ostream& out)
{
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
}

json provenance_json(const std::vector<rv::Provenance>& items)
{
    json arr = json::array();
    for (const auto& p : items) arr.push_back(json{{"name", p.name}, {"source", p.source}, {"hash", p.hash}});
    return arr;
}

std::vector<std::filesystem::path> table_files(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir)) throw UsageError("table directory '" + dir.string() + "' does not exist");
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .txt census tables in '" + dir.string() + "'");
    return files;
}

struct Extension {
    sieve::TwinCensus census;
    std::vector<rv::Provenance> provenance;
    std::size_t entries = 0;
};

// Splices a base enclosure of B(base_x) onto the tables in `dir` and runs
// the brackets up to `x_end`.
Extension extend_from_tables(const std::filesystem::path& dir, std::uint64_t base_x, const Interval& base_brun,
                             std::uint64_t x_end)
{
    Extension ext;
    std::vector<std::vector<tables::CensusTableEntry>> loaded;
    for (const auto& f : table_files(dir)) {
        loaded.push_back(tables::load_table_file(f));
        ext.provenance.push_back({f.filename().string(), "census table", sha256_file(f)});
    }
    const auto merged = tables::merge_tables(loaded);
    const auto win = tables::window(merged, base_x, x_end);
    if (win.empty() || win.front().threshold != base_x) {
        throw tables::TableError("no table entry at the base point " + std::to_string(base_x), 0);
    }
    if (win.back().threshold != x_end) {
        throw tables::TableError("tables end at " + std::to_string(win.back().threshold) + ", not at " +
                                     std::to_string(x_end),
                                 0);
    }
    const sieve::TwinCensus base{base_x, win.front().pi2, base_brun};
    ext.census = tables::extend_brun(base, win);
    ext.entries = win.size();
    return ext;
}

json census_json(const sieve::TwinCensus& c)
{
    return json{{"x", c.x}, {"pi2", c.pi2}, {"brun_lo", decimal_lo(c.brun_partial.lo())},
                {"brun_hi", decimal_hi(c.brun_partial.hi())}};
}

// ---- census ----------------------------------------------------------------

struct CensusArgs {
    std::string limit;
    std::uint64_t segment_bytes = sieve::SieveOptions{}.segment_bytes;
    unsigned threads = 0;
    std::string emit_table;
    std::string out;
};

void write_census_table(std::uint64_t limit, const sieve::SieveOptions& opts, const std::string& path)
{
    // Thresholds k * 10^n, k = 1..9, n >= 1, up to the limit.
    std::vector<tables::CensusTableEntry> entries;
    for (std::uint64_t scale = 10; scale <= limit; scale *= 10) {
        for (std::uint64_t k = 1; k <= 9 && k * scale <= limit; ++k) {
            tables::CensusTableEntry e;
            e.threshold = k * scale;
            e.k = k;
            e.exponent = static_cast<unsigned>(std::lround(std::log10(static_cast<double>(scale))));
            entries.push_back(e);
        }
        if (scale > std::numeric_limits<std::uint64_t>::max() / 10) break;
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.threshold < b.threshold; });
    if (!entries.empty()) {
        const sieve::Segmenter seg(entries.back().threshold + 3, opts.segment_bytes);
        std::size_t next = 0;
        std::uint64_t count = 0;
        sieve::for_each_twin(seg, 3, entries.back().threshold + 1, [&](std::uint64_t p) {
            while (next < entries.size() && entries[next].threshold < p) entries[next++].pi2 = count;
            ++count;
        });
        while (next < entries.size()) entries[next++].pi2 = count;
    }
    for (auto& e : entries) {
        e.prediction = e.threshold > 2 ? projection::predict_pi2(static_cast<double>(e.threshold)) : 0.0;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", e.prediction);
        e.prediction_text = buf;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << tables::serialize_table(entries);
}

int cmd_census(const CensusArgs& a, std::ostream& out)
{
    const std::uint64_t limit = parse_integer_option(a.limit, "--limit");
    if (limit < 3) throw UsageError("--limit must be at least 3");
    sieve::SieveOptions opts;
    opts.segment_bytes = a.segment_bytes;
    opts.threads = a.threads;
    const auto c = sieve::census(limit, opts);
    json doc = header("census");
    doc.update(census_json(c));
    doc["rigorous"] = true;
    doc["source"] = "sieve";
    if (!a.emit_table.empty()) {
        write_census_table(limit, opts, a.emit_table);
        doc["table"] = std::filesystem::path(a.emit_table).filename().string();
    }
    emit(doc, a.out, out);
    return kSuccess;
}

// ---- extend ----------------------------------------------------------------

struct BaseArgs {
    std::string base_x = "1e12";
    std::string base_lo = "1.8065924";
    std::string base_hi = "1.8065925";
};

struct ExtendArgs {
    BaseArgs base;
    std::string tables;
    std::string x_end = "4e18";
    std::string out;
};

std::string tables_dir(const std::string& given)
{
    if (!given.empty()) return given;
    if (const char* env = std::getenv(kTablesEnv); env && *env) return env;
    return {};
}

Interval base_enclosure(const BaseArgs& b)
{
    const Interval lo = parse_decimal(b.base_lo, "--base-lo");
    const Interval hi = parse_decimal(b.base_hi, "--base-hi");
    if (!(lo.lo() <= hi.hi())) throw UsageError("--base-lo exceeds --base-hi");
    return hull(lo, hi);
}

int cmd_extend(const ExtendArgs& a, std::ostream& out)
{
    const std::string dir = tables_dir(a.tables);
    if (dir.empty()) throw UsageError(std::string("extend needs --tables or ") + kTablesEnv);
    const auto ext = extend_from_tables(dir, parse_integer_option(a.base.base_x, "--base-x"), base_enclosure(a.base),
                                        parse_integer_option(a.x_end, "--x0"));
    json doc = header("extend");
    doc.update(census_json(ext.census));
    doc["rigorous"] = true;
    doc["source"] = "tables";
    doc["base"] = json{{"x", a.base.base_x}, {"brun_lo", a.base.base_lo}, {"brun_hi", a.base.base_hi}};
    doc["table_entries"] = ext.entries;
    doc["inputs_provenance"] = provenance_json(ext.provenance);
    emit(doc, a.out, out);
    return kSuccess;
}

// ---- scan-c ----------------------------------------------------------------

struct ScanArgs {
    std::string alpha = "2/5";
    std::string xmax = "1e5";
    unsigned offsets = 0;
    unsigned unit_samples = 0;
    std::string out;
};

int cmd_scan(const ScanArgs& a, std::ostream& out)
{
    divisor::GridSpec grid;
    grid.x_max = static_cast<double>(parse_integer_option(a.xmax, "--xmax"));
    grid.offsets_per_unit = a.offsets;
    grid.unit_samples = a.unit_samples;
    const auto scan = divisor::scan_c(parse_fraction(a.alpha), grid);
    json doc = header("scan-c");
    doc["alpha"] = scan.alpha.str();
    doc["x_max"] = a.xmax;
    doc["max_value"] = interval_json(scan.max_value);
    doc["argmax"] = shortest(scan.argmax);
    doc["argmax_kind"] = scan.argmax_kind;
    doc["unit_interval_max"] = json{{"x", shortest(scan.unit_max.x)}, {"value", interval_json(scan.unit_max.value)}};
    doc["integer_points"] = scan.integer_points;
    doc["extra_grid_points"] = scan.grid.size();
    emit(doc, a.out, out);
    return kSuccess;
}

// ---- h-bound ---------------------------------------------------------------

struct HArgs {
    std::string cutoff = "1e8";
    std::string alpha = "2/5";
    unsigned threads = 0;
    std::string out;
};

int cmd_hbound(const HArgs& a, std::ostream& out)
{
    sieve::SieveOptions opts;
    opts.threads = a.threads;
    const Fraction alpha = parse_fraction(a.alpha);
    const auto r = euler::h_bound(parse_integer_option(a.cutoff, "--cutoff"), -alpha, opts);
    json doc = header("h-bound");
    doc["cutoff"] = r.cutoff;
    doc["s"] = r.s.str();
    doc["S1"] = interval_json(r.S1);
    doc["prime_count"] = r.prime_count;
    doc["tail_exponent"] = interval_json(r.tail_exponent);
    doc["k1"] = decimal_hi(r.k1);
    doc["k2"] = decimal_hi(r.k2);
    doc["tail_first_term"] = interval_json(r.tail_first_term);
    doc["tail_integral"] = interval_json(r.tail_integral);
    doc["log_H_upper"] = interval_json(r.log_H_upper);
    doc["H_bound"] = interval_json(r.H_bound);
    doc["weak"] = r.weak;
    emit(doc, a.out, out);
    return kSuccess;
}

// ---- certify ---------------------------------------------------------------

struct CertifyArgs {
    BaseArgs base;
    std::string x0;
    std::string tables;
    std::string census;
    double cutoff_u = 20000.0;
    double width_target = 1e-6;
    bool improved = false;
    std::string alpha = "2/5";
    std::string c_alpha;
    std::string h_upper;
    unsigned threads = 0;
    std::string out;
};

struct CensusFixture {
    sieve::TwinCensus census;
    rv::Provenance provenance;
};

CensusFixture load_census_fixture(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    const std::string source = doc.value("source", std::string{});
    if (!doc.value("rigorous", false) || source == "projection") {
        throw UsageError(path + ": refusing a non-rigorous census (source '" + source + "')");
    }
    auto integer = [&](const char* key) -> std::uint64_t {
        const auto& v = doc.at(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_string()) return parse_integer_option(v.get<std::string>(), key);
        throw UsageError(path + ": field '" + key + "' must be an integer");
    };
    auto decimal = [&](const char* key) {
        const auto& v = doc.at(key);
        if (!v.is_string()) throw UsageError(path + ": field '" + std::string(key) + "' must be a decimal string");
        return parse_decimal(v.get<std::string>(), key);
    };
    CensusFixture fx;
    try {
        const Interval lo = decimal("brun_lo"), hi = decimal("brun_hi");
        if (!(lo.lo() <= hi.hi())) throw UsageError(path + ": brun_lo exceeds brun_hi");
        fx.census = sieve::TwinCensus{integer("x"), integer("pi2"), hull(lo, hi)};
    } catch (const json::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
    fx.provenance = {std::filesystem::path(path).filename().string(), source.empty() ? "census" : source,
                     sha256_file(path)};
    return fx;
}

json params_json(const rv::RVParams& p)
{
    return json{{"alpha", p.alpha.str()},     {"c_alpha", interval_json(p.c_alpha)},
                {"rho", interval_json(p.rho)}, {"H_neg_alpha", interval_json(p.H_neg_alpha)},
                {"C", interval_json(p.C)},     {"A6", interval_json(p.A6)},
                {"A7", interval_json(p.A7)},   {"A8", interval_json(p.A8)},
                {"A9", interval_json(p.A9)},   {"improved_a9", p.improved_a9},
                {"idealized", p.idealized}};
}

json certificate_json(const rv::BoundCertificate& c, double width_target)
{
    json doc = header("certify");
    doc["lower"] = decimal_lo(c.lower);
    doc["upper"] = decimal_hi(c.upper);
    doc["x0"] = c.x0;
    doc["pi2_x0"] = c.pi2_x0;
    doc["brun_x0"] = interval_json(c.brun_x0);
    doc["params"] = params_json(c.params);
    doc["cutoff_u"] = shortest(c.cutoff_u);
    doc["tail_bound"] = decimal_hi(c.tail_bound);
    doc["improved"] = c.improved;
    const auto& t = c.terms;
    doc["terms"] = json{{"brun_x0", interval_json(t.brun_x0)},     {"count_term", interval_json(t.count_term)},
                        {"integral", interval_json(t.integral)},   {"tail", interval_json(t.tail)},
                        {"sqrt_term", interval_json(t.sqrt_term)}, {"total", interval_json(t.total)},
                        {"F_x0", interval_json(t.F_x0)}};
    doc["quadrature"] = json{{"width_target", shortest(width_target)},
                             {"evaluations", t.quadrature.evaluations},
                             {"leaves", t.quadrature.leaves},
                             {"passes", t.quadrature.passes}};
    doc["inputs_provenance"] = provenance_json(c.inputs_provenance);
    return doc;
}

int cmd_certify(const CertifyArgs& a, std::ostream& out)
{
    const std::string dir = a.census.empty() ? tables_dir(a.tables) : std::string{};
    if (a.census.empty() && dir.empty()) {
        throw UsageError(std::string("certify needs --census, --tables or ") + kTablesEnv);
    }

    sieve::TwinCensus census;
    std::vector<rv::Provenance> provenance;
    if (!a.census.empty()) {
        auto fx = load_census_fixture(a.census);
        if (!a.x0.empty() && parse_integer_option(a.x0, "--x0") != fx.census.x) {
            throw UsageError("--x0 does not match the census point in " + a.census);
        }
        census = fx.census;
        provenance.push_back(fx.provenance);
    } else {
        const std::uint64_t x0 = parse_integer_option(a.x0.empty() ? "4e18" : a.x0, "--x0");
        auto ext = extend_from_tables(dir, parse_integer_option(a.base.base_x, "--base-x"), base_enclosure(a.base), x0);
        census = ext.census;
        provenance.push_back({"B(" + a.base.base_x + ")", "[" + a.base.base_lo + ", " + a.base.base_hi + "]", ""});
        provenance.insert(provenance.end(), ext.provenance.begin(), ext.provenance.end());
    }

    rv::RVInputs in = rv::default_inputs();
    in.alpha = parse_fraction(a.alpha);
    const bool default_alpha = in.alpha == Fraction{2, 5};
    if (!default_alpha && (a.c_alpha.empty() || a.h_upper.empty())) {
        throw UsageError("--alpha other than 2/5 needs --c-alpha and --h-upper");
    }
    if (!a.c_alpha.empty()) in.c_alpha = hull(Interval::point(0.0), parse_decimal(a.c_alpha, "--c-alpha"));
    if (!a.h_upper.empty()) in.H_neg_alpha = hull(Interval::point(1.0), parse_decimal(a.h_upper, "--h-upper"));
    in.improved_a9 = a.improved;
    const rv::RVParams params = rv::derive_params(in);

    rv::UpperBoundOptions opts;
    opts.cutoff_u = a.cutoff_u;
    opts.width_target = a.width_target;
    opts.improved_coefficient = a.improved;
    opts.quadrature.threads = sieve::resolve_threads(a.threads);
    if (!(opts.cutoff_u > 0.0) || !(opts.width_target > 0.0)) {
        throw UsageError("--cutoff-u and --width-target must be positive");
    }

    auto cert = rv::brun_upper(census, params, opts);
    cert.inputs_provenance = provenance;
    emit(certificate_json(cert, opts.width_target), a.out, out);
    return kSuccess;
}

// ---- project ---------------------------------------------------------------

struct ProjectArgs {
    std::vector<int> ks{19, 20, 80};
    double b_assumed = projection::kDefaultBAssumed;
    unsigned threads = 0;
    std::string out;
};

int cmd_project(const ProjectArgs& a, std::ostream& out)
{
    rv::UpperBoundOptions opts;
    opts.quadrature.threads = sieve::resolve_threads(a.threads);
    const auto rows =
        projection::project_table(a.ks, a.b_assumed, rv::derive_params(rv::default_inputs()), opts);
    if (!a.out.empty()) {
        json doc = header("project");
        doc["rigorous"] = false;
        doc["source"] = "projection";
        doc["b_assumed"] = shortest(a.b_assumed);
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back(json{{"k", r.k},
                               {"B_pred", shortest(r.B_pred)},
                               {"pi2_pred", shortest(r.pi2_pred)},
                               {"upper_pred", shortest(r.upper_pred)}});
        }
        doc["projections"] = arr;
        emit(doc, a.out, out);
    }
    out << "# heuristic projection, not rigorous (B assumed " << shortest(a.b_assumed) << ")\n";
    out << "   k        B_pred        pi2_pred    upper_pred\n";
    for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%4d  %12.7f  %14.7e  %12.7f\n", r.k, r.B_pred, r.pi2_pred, r.upper_pred);
        out << line;
    }
    return kSuccess;
}

} // namespace

std::uint64_t parse_integer_literal(std::string_view text)
{
    const auto bad = [&] { return std::invalid_argument("not an integer literal: '" + std::string(text) + "'"); };
    const auto sep = text.find_first_of("eEd");
    std::uint64_t mant = 0, exp = 0;
    const std::string_view m = text.substr(0, sep);
    if (m.empty()) throw bad();
    auto [p1, e1] = std::from_chars(m.data(), m.data() + m.size(), mant);
    if (e1 != std::errc{} || p1 != m.data() + m.size()) throw bad();
    if (sep != std::string_view::npos) {
        const std::string_view e = text.substr(sep + 1);
        if (e.empty()) throw bad();
        auto [p2, e2] = std::from_chars(e.data(), e.data() + e.size(), exp);
        if (e2 != std::errc{} || p2 != e.data() + e.size()) throw bad();
    }
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (mant > std::numeric_limits<std::uint64_t>::max() / 10) throw bad();
        mant *= 10;
    }
    return mant;
}

std::string decimal_lo(double v)
{
    if (std::isnan(v)) return "nan";
    if (exact_integer(v)) return shortest(v);
    return shortest(rounding::next_down(v));
}

std::string decimal_hi(double v)
{
    if (std::isnan(v)) return "nan";
    if (exact_integer(v)) return shortest(v);
    return shortest(rounding::next_up(v));
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
    char buf[1 << 16];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(f.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::ostringstream hex;
    for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified bounds for Brun's constant", "brun"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CensusArgs census;
    auto* c = app.add_subcommand("census", "Sieve twin primes up to a limit");
    c->add_option("--limit", census.limit, "Upper limit x (e.g. 1e9)")->required();
    c->add_option("--segment-size", census.segment_bytes, "Sieve segment size in bytes")->check(CLI::PositiveNumber);
    c->add_option("--threads", census.threads, "Worker threads (0 = all cores)");
    c->add_option("--emit-table", census.emit_table, "Also write a census table at k*10^n thresholds");
    c->add_option("--out", census.out, "Write JSON here instead of stdout");

    ExtendArgs extend;
    auto* e = app.add_subcommand("extend", "Extend B(x) along census tables");
    e->add_option("--base-x", extend.base.base_x, "Base point")->capture_default_str();
    e->add_option("--base-lo", extend.base.base_lo, "Lower end of B(base-x)")->capture_default_str();
    e->add_option("--base-hi", extend.base.base_hi, "Upper end of B(base-x)")->capture_default_str();
    e->add_option("--tables", extend.tables, std::string("Table directory (default $") + kTablesEnv + ")");
    e->add_option("--x0", extend.x_end, "End point")->capture_default_str();
    e->add_option("--out", extend.out, "Write JSON here instead of stdout");

    ScanArgs scan;
    auto* s = app.add_subcommand("scan-c", "Scan |E(x)| x^alpha for the divisor sum error");
    s->add_option("--alpha", scan.alpha, "alpha as p/q")->capture_default_str();
    s->add_option("--xmax", scan.xmax, "Scan range")->capture_default_str();
    s->add_option("--offsets", scan.offsets, "Extra sample offsets per unit interval");
    s->add_option("--unit-samples", scan.unit_samples, "Extra samples on (0, 1)");
    s->add_option("--out", scan.out, "Write JSON here instead of stdout");

    HArgs h;
    auto* hb = app.add_subcommand("h-bound", "Upper bound for H(-alpha)");
    hb->add_option("--cutoff", h.cutoff, "Prime cutoff P")->capture_default_str();
    hb->add_option("--alpha", h.alpha, "alpha as p/q")->capture_default_str();
    hb->add_option("--threads", h.threads, "Worker threads (0 = all cores)");
    hb->add_option("--out", h.out, "Write JSON here instead of stdout");

    CertifyArgs cert;
    auto* ce = app.add_subcommand("certify", "Certified upper bound for Brun's constant");
    ce->add_option("--x0", cert.x0, "Census point (default 4e18, or the point in --census)");
    ce->add_option("--tables", cert.tables, std::string("Table directory (default $") + kTablesEnv + ")");
    ce->add_option("--census", cert.census, "Census JSON from `brun extend` or a fixture");
    ce->add_option("--base-x", cert.base.base_x, "Base point for --tables")->capture_default_str();
    ce->add_option("--base-lo", cert.base.base_lo, "Lower end of B(base-x)")->capture_default_str();
    ce->add_option("--base-hi", cert.base.base_hi, "Upper end of B(base-x)")->capture_default_str();
    ce->add_option("--cutoff-u", cert.cutoff_u, "Quadrature cutoff in u = log t")->capture_default_str();
    ce->add_option("--width-target", cert.width_target, "Quadrature enclosure width")->capture_default_str();
    ce->add_flag("--improved", cert.improved, "Use the sharper sqrt-term coefficient and A9");
    ce->add_option("--alpha", cert.alpha, "alpha as p/q")->capture_default_str();
    ce->add_option("--c-alpha", cert.c_alpha, "Upper bound for c(alpha)");
    ce->add_option("--h-upper", cert.h_upper, "Upper bound for H(-alpha)");
    ce->add_option("--threads", cert.threads, "Worker threads (0 = all cores)");
    ce->add_option("--out", cert.out, "Write JSON here instead of stdout");
    ce->get_option("--census")->excludes(ce->get_option("--tables"));

    ProjectArgs proj;
    auto* pr = app.add_subcommand("project", "Heuristic projections at 10^k (not rigorous)");
    pr->add_option("--ks", proj.ks, "Exponents k")->delimiter(',')->capture_default_str();
    pr->add_option("--b-assumed", proj.b_assumed, "Assumed value of B")->capture_default_str();
    pr->add_option("--threads", proj.threads, "Worker threads (0 = all cores)");
    pr->add_option("--out", proj.out, "Also write JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*c) return cmd_census(census, out);
        if (*e) return cmd_extend(extend, out);
        if (*s) return cmd_scan(scan, out);
        if (*hb) return cmd_hbound(h, out);
        if (*ce) return cmd_certify(cert, out);
        if (*pr) return cmd_project(proj, out);
    } catch (const UsageError& ex) {
        err << "brun: " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception& ex) {
        err << "brun: " << ex.what() << "\n";
        return kComputation;
    }
    return kUsage;
}

} // namespace brun::cli
