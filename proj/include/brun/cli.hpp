// Command-line front end: census, extend, scan-c, h-bound, certify, project.
#pragma once

#include "brun/interval.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace brun::cli {

inline constexpr const char* kToolVersion = "brun 0.1.0";
/// Environment variable naming the default census table directory.
inline constexpr const char* kTablesEnv = "BRUN_TABLES";

enum ExitCode : int { kSuccess = 0, kUsage = 1, kComputation = 2 };

/// Exact integer from "1000000", "1e8", "4e18" or "4d18". Throws
/// std::invalid_argument on anything else, including overflow.
std::uint64_t parse_integer_literal(std::string_view text);

/// Decimal strings d with d <= v (resp. d >= v). Integers below 2^53 are
/// printed exactly; other values use the shortest representation of the
/// neighbouring double, which lies strictly on the outer side of v.
std::string decimal_lo(double v);
std::string decimal_hi(double v);

/// SHA-256 of a file's contents as lowercase hex.
std::string sha256_file(const std::filesystem::path& path);

/// Entry point; returns one of ExitCode. Normal output goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace brun::cli
