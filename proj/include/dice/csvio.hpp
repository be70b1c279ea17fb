// CSV parsing/formatting with pinned float formatting (9 significant digits,
// C locale) so emitted files are byte-identical across runs and platforms.
#pragma once

#include <string>
#include <vector>

namespace dice {

// %.9g with C-locale semantics.
std::string format_double(double v);
std::string format_int(long long v);

// RFC-4180-style parser: double-quoted fields may contain commas and escaped
// quotes (""). Returns one vector of fields per non-empty line.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

// Quotes a field iff it contains a comma, quote, or newline.
std::string csv_field(const std::string& s);

std::string join_csv_row(const std::vector<std::string>& fields);

} // namespace dice
