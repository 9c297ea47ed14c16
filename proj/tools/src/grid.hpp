#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pseudolinear::cli {

/// Parses a comma-separated list whose items are numbers or inclusive ranges
/// "lo:hi" (step 1) and "lo:hi:step", e.g. "0.5,1:3,10:20:5".
std::vector<double> parse_grid(std::string_view text);

/// parse_grid restricted to non-negative integers.
std::vector<unsigned long long> parse_integer_grid(std::string_view text);

/// Shortest text that reads back as the same double.
std::string format_number(double value);

}  // namespace pseudolinear::cli
