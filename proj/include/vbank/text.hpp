#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace vbank {

/// Locale-independent decimal text with 12 significant digits; infinities
/// print as `inf` / `-inf`.
std::string format_number(double v);

/// Parses a full token written by format_number (or any plain decimal).
/// Accepts `inf`; returns nullopt on trailing garbage.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view s);

} // namespace vbank
