// Locale-independent numeric text helpers shared by the CSV and config code.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace pgrav {

// Shortest decimal form that round-trips through binary64; '.' decimal point
// regardless of locale.
std::string format_double(double value);

// Strict full-string parse; nullopt for empty input, trailing characters, or
// anything else from_chars rejects.
std::optional<double> parse_double(std::string_view text);

}  // namespace pgrav
