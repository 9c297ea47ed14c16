#include "grid.hpp"

#include "commands.hpp"

#include <charconv>
#include <cmath>

namespace pseudolinear::cli {

namespace {

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> values;
  for (const auto item : split(text, ',')) {
    const auto fields = split(item, ':');
    if (fields.size() == 1) {
      values.push_back(parse_number(item));
      continue;
    }
    if (fields.size() > 3) throw UsageError("bad range: '" + std::string(item) + "'");
    const double lo = parse_number(fields[0]);
    const double hi = parse_number(fields[1]);
    const double step = fields.size() == 3 ? parse_number(fields[2]) : 1.0;
    if (step <= 0.0 || hi < lo) throw UsageError("bad range: '" + std::string(item) + "'");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    if (count > 1'000'000) throw UsageError("range too long: '" + std::string(item) + "'");
    for (std::size_t i = 0; i <= count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  }
  return values;
}

std::vector<unsigned long long> parse_integer_grid(std::string_view text) {
  std::vector<unsigned long long> out;
  for (double v : parse_grid(text)) {
    if (v < 0.0 || v != std::floor(v) || v > 9.0e15) {
      throw UsageError("expected non-negative integers in '" + std::string(text) + "'");
    }
    out.push_back(static_cast<unsigned long long>(v));
  }
  return out;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace pseudolinear::cli
