#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace uavplan::cli {

/// Shortest decimal that round-trips, capped at 12 significant digits.
/// Locale independent.
std::string format_number(double value);

/// JSON number rounded like format_number; null for non-finite values.
nlohmann::ordered_json json_number(double value);

/// Writes one comma-separated row terminated by '\n'.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

/// Parses "start:stop:step" (step > 0, start >= 0, stop >= start) into an
/// inclusive arithmetic sequence. Throws InputError.
std::vector<double> parse_range(const std::string& text, const std::string& flag);

/// Parses a comma-separated list of numbers. Throws InputError.
std::vector<double> parse_number_list(const std::string& text, const std::string& flag);

}  // namespace uavplan::cli
