#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shiftk::text {

/// Shortest-independent, lossless rendering: scientific notation with 17
/// significant digits.
std::string format_double(double v);

/// Strict parse of a whole token; accepts Fortran d/D exponents.
std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

/// Whitespace tokenization.
std::vector<std::string_view> split_ws(std::string_view line);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace shiftk::text
