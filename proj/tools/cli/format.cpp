#include "cli/format.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "uavplan/errors.hpp"

namespace uavplan::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  int digits = 0;
  bool leading = true;
  for (const char* p = buf; p != res.ptr && *p != 'e'; ++p) {
    if (*p < '0' || *p > '9') continue;
    if (leading && *p == '0') continue;
    leading = false;
    ++digits;
  }
  if (digits > 12) {
    res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
  }
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json json_number(double value) {
  if (!std::isfinite(value)) return nullptr;
  const std::string text = format_number(value);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

namespace {

double parse_double(const std::string& text, const std::string& flag) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw InputError(flag + ": '" + text + "' is not a number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<double> parse_range(const std::string& text, const std::string& flag) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InputError(flag + ": expected start:stop:step, got '" + text + "'");
  const double start = parse_double(parts[0], flag);
  const double stop = parse_double(parts[1], flag);
  const double step = parse_double(parts[2], flag);
  if (start < 0.0) throw InputError(flag + ": start must be >= 0");
  if (!(step > 0.0)) throw InputError(flag + ": step must be > 0");
  if (stop < start) throw InputError(flag + ": stop must be >= start");
  const double span = (stop - start) / step;
  if (span > 1e7) throw InputError(flag + ": range has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = start + static_cast<double>(i) * step;
  return values;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(part, flag));
  if (values.empty()) throw InputError(flag + ": empty list");
  return values;
}

}  // namespace uavplan::cli
