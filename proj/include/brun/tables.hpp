// Published twin-prime census tables ("<k>d<n>  <pi2>  <prediction>" lines)
// and the bracketing argument that extends a B(x) enclosure along them.
#pragma once

#include "brun/interval.hpp"
#include "brun/sieve.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace brun::tables {

struct CensusTableEntry {
    std::uint64_t threshold = 0; // k * 10^n
    std::uint64_t pi2 = 0;
    /// Heuristic third column. Kept for diagnostics, never used in bounds.
    double prediction = 0.0;

    std::uint64_t k = 0;
    unsigned exponent = 0;
    std::string prediction_text;
};

class TableError : public std::runtime_error {
public:
    TableError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
    /// 1-based line number, 0 when the error is not tied to a line.
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parses "<k>d<n>" into k * 10^n. Throws std::invalid_argument.
std::uint64_t parse_threshold(std::string_view token, std::uint64_t* k = nullptr, unsigned* exponent = nullptr);

/// Parses a whole table. Blank lines and lines starting with '#' are
/// skipped. Thresholds must strictly increase and counts weakly increase.
std::vector<CensusTableEntry> parse_table(std::string_view text);

/// Canonical text form: one "<k>d<n> <pi2> <prediction>" line per entry.
std::string serialize_table(std::span<const CensusTableEntry> entries);

std::vector<CensusTableEntry> load_table_file(const std::filesystem::path& path);

/// Merges several tables into one list ordered by threshold. Entries at the
/// same threshold must agree on the count.
std::vector<CensusTableEntry> merge_tables(std::span<const std::vector<CensusTableEntry>> tables);

/// Entries with lo <= threshold <= hi.
std::vector<CensusTableEntry> window(std::span<const CensusTableEntry> entries, std::uint64_t lo, std::uint64_t hi);

/// Enclosure of the contribution to B of the pairs with lower member in
/// (lower.threshold, upper.threshold]. Each such pair contributes
/// 1/p + 1/(p+2), which lies in [2/(p+1), 2/p]; with p <= T_u - 1 for even
/// T_u this gives [2D/T_u, 2D/T_l] where D is the count difference.
Interval bracket_contribution(const CensusTableEntry& lower, const CensusTableEntry& upper);

/// Splices `base` onto the first entry and sums the brackets between
/// consecutive entries. Returns the census at the last threshold.
sieve::TwinCensus extend_brun(const sieve::TwinCensus& base, std::span<const CensusTableEntry> entries);

} // namespace brun::tables
