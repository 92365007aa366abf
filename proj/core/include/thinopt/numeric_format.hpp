#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace thinopt {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Strict parse of a complete decimal literal (surrounding blanks allowed).
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace thinopt
