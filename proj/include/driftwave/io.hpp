#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace driftwave {

// Whitespace-trimmed comma-separated fields of one line.
std::vector<std::string> split_csv_line(std::string_view line);

// Strict number parse; nullopt if the text is not a complete number.
std::optional<double> parse_number(std::string_view text);

// One observation per line, or "t,value" rows, oldest first. A non-numeric
// first line is treated as a header. Blank lines are skipped.
std::vector<double> read_series(std::istream& in);
std::vector<double> read_series(const std::filesystem::path& path);

// "time,estimate" rows as written by external tools; returns the estimates
// in time order.
std::vector<double> read_estimates(const std::filesystem::path& path);

}  // namespace driftwave
