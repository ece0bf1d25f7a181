#include "brun/tables.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace brun::tables {

namespace {

bool parse_u64(std::string_view s, std::uint64_t& out)
{
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

} // namespace

std::uint64_t parse_threshold(std::string_view token, std::uint64_t* k_out, unsigned* exp_out)
{
    const auto d = token.find('d');
    std::uint64_t k = 0, n = 0;
    if (d == std::string_view::npos || !parse_u64(token.substr(0, d), k) || !parse_u64(token.substr(d + 1), n)) {
        throw std::invalid_argument("threshold '" + std::string(token) + "' is not of the form <k>d<n>");
    }
    if (k == 0) throw std::invalid_argument("threshold '" + std::string(token) + "' is zero");
    std::uint64_t value = k;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (value > std::numeric_limits<std::uint64_t>::max() / 10) {
            throw std::invalid_argument("threshold '" + std::string(token) + "' overflows 64 bits");
        }
        value *= 10;
    }
    if (k_out) *k_out = k;
    if (exp_out) *exp_out = static_cast<unsigned>(n);
    return value;
}

std::vector<CensusTableEntry> parse_table(std::string_view text)
{
    std::vector<CensusTableEntry> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        const std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        const auto cols = split_ws(line);
        if (cols.empty() || cols[0].front() == '#') continue;
        if (cols.size() != 3) {
            throw TableError(at_line(line_no) + "expected 3 columns, found " + std::to_string(cols.size()), line_no);
        }
        CensusTableEntry e;
        try {
            e.threshold = parse_threshold(cols[0], &e.k, &e.exponent);
        } catch (const std::invalid_argument& ex) {
            throw TableError(at_line(line_no) + ex.what(), line_no);
        }
        if (!parse_u64(cols[1], e.pi2)) {
            throw TableError(at_line(line_no) + "count '" + std::string(cols[1]) + "' is not an integer", line_no);
        }
        const auto [ptr, ec] = std::from_chars(cols[2].data(), cols[2].data() + cols[2].size(), e.prediction);
        if (ec != std::errc{} || ptr != cols[2].data() + cols[2].size()) {
            throw TableError(at_line(line_no) + "prediction '" + std::string(cols[2]) + "' is not a number", line_no);
        }
        e.prediction_text = std::string(cols[2]);

        if (!entries.empty()) {
            const auto& prev = entries.back();
            if (e.threshold <= prev.threshold) {
                throw TableError(at_line(line_no) + "thresholds must strictly increase", line_no);
            }
            if (e.pi2 < prev.pi2) {
                throw TableError(at_line(line_no) + "count decreases (corrupt data)", line_no);
            }
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::string serialize_table(std::span<const CensusTableEntry> entries)
{
    std::string out;
    for (const auto& e : entries) {
        out += std::to_string(e.k) + "d" + std::to_string(e.exponent) + " " + std::to_string(e.pi2) + " " +
               e.prediction_text + "\n";
    }
    return out;
}

std::vector<CensusTableEntry> load_table_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TableError("cannot open table file " + path.string(), 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_table(ss.str());
    } catch (const TableError& e) {
        throw TableError(path.string() + ": " + e.what(), e.line());
    }
}

std::vector<CensusTableEntry> merge_tables(std::span<const std::vector<CensusTableEntry>> tables)
{
    std::vector<CensusTableEntry> all;
    for (const auto& t : tables) all.insert(all.end(), t.begin(), t.end());
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.threshold < b.threshold; });
    std::vector<CensusTableEntry> merged;
    for (auto& e : all) {
        if (!merged.empty() && merged.back().threshold == e.threshold) {
            if (merged.back().pi2 != e.pi2) {
                throw TableError("tables disagree on the count at threshold " + std::to_string(e.threshold), 0);
            }
            continue;
        }
        if (!merged.empty() && e.pi2 < merged.back().pi2) {
            throw TableError("merged tables are not monotone at threshold " + std::to_string(e.threshold), 0);
        }
        merged.push_back(std::move(e));
    }
    return merged;
}

std::vector<CensusTableEntry> window(std::span<const CensusTableEntry> entries, std::uint64_t lo, std::uint64_t hi)
{
    std::vector<CensusTableEntry> out;
    for (const auto& e : entries) {
        if (e.threshold >= lo && e.threshold <= hi) out.push_back(e);
    }
    return out;
}

Interval bracket_contribution(const CensusTableEntry& lower, const CensusTableEntry& upper)
{
    if (lower.threshold >= upper.threshold) throw TableError("bracket thresholds are not increasing", 0);
    if (lower.pi2 > upper.pi2) throw TableError("bracket counts decrease (corrupt data)", 0);
    const std::uint64_t delta = upper.pi2 - lower.pi2;
    if (delta == 0) return Interval{};
    const Interval twice = Interval::point(2.0) * Interval::from_integer(delta);
    // p <= T_u, and p <= T_u - 1 when T_u is even; 1/p + 1/(p+2) > 2/(p+1).
    const std::uint64_t lo_den = (upper.threshold % 2 == 0) ? upper.threshold : upper.threshold + 1;
    const double lo = (twice / Interval::from_integer(lo_den)).lo();
    const double hi = (twice / Interval::from_integer(lower.threshold)).hi();
    return Interval::make(lo, hi);
}

sieve::TwinCensus extend_brun(const sieve::TwinCensus& base, std::span<const CensusTableEntry> entries)
{
    if (entries.empty()) throw TableError("no table entries to extend along", 0);
    const auto& first = entries.front();
    if (base.x != first.threshold || base.pi2 != first.pi2) {
        throw TableError("splice mismatch: base census (x=" + std::to_string(base.x) + ", pi2=" +
                             std::to_string(base.pi2) + ") does not match the first entry (x=" +
                             std::to_string(first.threshold) + ", pi2=" + std::to_string(first.pi2) + ")",
                         0);
    }
    Interval sum = base.brun_partial;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        sum += bracket_contribution(entries[i - 1], entries[i]);
    }
    return sieve::TwinCensus{entries.back().threshold, entries.back().pi2, sum};
}

} // namespace brun::tables
