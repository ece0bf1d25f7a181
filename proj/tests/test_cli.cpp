#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brun/cli.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace brun;
using json = nlohmann::json;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "brun");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path fixtures() { return BRUN_FIXTURES_DIR; }

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("brun_test_cli_" + name);
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

} // namespace

TEST_CASE("integer literals")
{
    CHECK(cli::parse_integer_literal("1000000") == 1000000);
    CHECK(cli::parse_integer_literal("1e8") == 100000000);
    CHECK(cli::parse_integer_literal("4e18") == 4000000000000000000ull);
    CHECK(cli::parse_integer_literal("1001d12") == 1001000000000000ull);
    CHECK_THROWS_AS(cli::parse_integer_literal("1e20"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_integer_literal("1.5e3"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_integer_literal("e5"), std::invalid_argument);
    CHECK_THROWS_AS(cli::parse_integer_literal(""), std::invalid_argument);
}

TEST_CASE("decimal strings round outward")
{
    for (double v : {0.1, 1.0 / 3.0, 2.288513, 1.840503, -7.25e-9, 3e300}) {
        CHECK(Big(cli::decimal_lo(v)) <= Big(v));
        CHECK(Big(cli::decimal_hi(v)) >= Big(v));
    }
    CHECK(cli::decimal_lo(8169.0) == "8169");
    CHECK(cli::decimal_hi(0.0) == "0");
}

TEST_CASE("sha256")
{
    const auto p = temp_file("abc");
    write(p, "abc");
    CHECK(cli::sha256_file(p) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::filesystem::remove(p);
}

TEST_CASE("census command")
{
    const auto r = run({"census", "--limit", "1000000", "--threads", "2"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["pi2"] == 8169);
    CHECK(j["tool"] == cli::kToolVersion);
    const auto table = temp_file("table.txt");
    CHECK(run({"census", "--limit", "1e5", "--emit-table", table.string()}).code == 0);
    std::ifstream in(table);
    std::string last, line;
    while (std::getline(in, line)) last = line;
    CHECK(last.rfind("1d5 1224 ", 0) == 0);
    std::filesystem::remove(table);
}

TEST_CASE("usage errors exit with 1")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"census"}).code == 1);
    CHECK(run({"census", "--limit", "lots"}).code == 1);
    CHECK(run({"h-bound", "--alpha", "x"}).code == 1);
    CHECK(run({"certify", "--tables", "/nonexistent/dir"}).code == 1);
    CHECK(run({"--version"}).code == 0);
}

TEST_CASE("extend along the fixture excerpt")
{
    const auto r = run({"extend", "--tables", (fixtures() / "tables").string(), "--base-x", "1000d12", "--x0", "1001d12"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["pi2"] == 1178316017996ull);
    CHECK(j["inputs_provenance"].size() == 1);
    CHECK(run({"extend", "--tables", (fixtures() / "tables").string(), "--base-x", "1e15", "--x0", "4e18"}).code == 2);
}

TEST_CASE("certify from the census fixture")
{
    const std::string census = (fixtures() / "census_4e18.json").string();
    const auto a = run({"certify", "--census", census, "--width-target", "1e-4", "--threads", "1"});
    const auto b = run({"certify", "--census", census, "--width-target", "1e-4", "--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = json::parse(a.out);
    CHECK(std::stod(j["upper"].get<std::string>()) < 2.2887);
    CHECK(std::stod(j["lower"].get<std::string>()) <= 1.840503);
    CHECK(j["x0"] == 4000000000000000000ull);
    CHECK(j["tail_bound"].get<std::string>().rfind("5.0000000000000", 0) == 0);
    CHECK(j["inputs_provenance"][0]["hash"].get<std::string>().size() == 64);
    CHECK(run({"certify", "--census", census, "--x0", "1e18", "--width-target", "1e-4"}).code == 1);
}

TEST_CASE("certify refuses heuristic inputs")
{
    const auto p = temp_file("projection.json");
    write(p, R"({"x": "1e19", "pi2": 7237517300000000, "brun_lo": "1.8418", "brun_hi": "1.8418",
                 "rigorous": false, "source": "projection"})");
    const auto r = run({"certify", "--census", p.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("non-rigorous") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("computation errors exit with 2")
{
    const auto p = temp_file("small.json");
    write(p, R"({"x": 100000, "pi2": 1224, "brun_lo": "1.67", "brun_hi": "1.68", "rigorous": true, "source": "sieve"})");
    const auto r = run({"certify", "--census", p.string(), "--width-target", "1e-3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("F(x0)") != std::string::npos);
    std::filesystem::remove(p);
}

TEST_CASE("scan-c, h-bound and project")
{
    const auto s = run({"scan-c", "--alpha", "2/5", "--xmax", "1e3"});
    REQUIRE(s.code == 0);
    CHECK(std::stod(json::parse(s.out)["max_value"]["hi"].get<std::string>()) <= 1.0503);

    const auto h = run({"h-bound", "--cutoff", "1e5"});
    REQUIRE(h.code == 0);
    CHECK(json::parse(h.out)["prime_count"] == 9592);

    const auto out = temp_file("project.json");
    const auto p = run({"project", "--ks", "19", "--out", out.string()});
    REQUIRE(p.code == 0);
    CHECK(p.out.find("not rigorous") != std::string::npos);
    CHECK(p.out.find("2.281") != std::string::npos);
    std::ifstream in(out);
    const auto j = json::parse(in);
    CHECK(j["rigorous"] == false);
    CHECK(run({"certify", "--census", out.string()}).code == 1);
    std::filesystem::remove(out);
}
