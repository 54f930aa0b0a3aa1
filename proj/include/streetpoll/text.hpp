#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

// Strips leading/trailing ASCII whitespace.
std::string trim(std::string_view s);

// ASCII-only case folding. Multi-byte UTF-8 sequences pass through
// untouched, so Turkish dotted/dotless i are never remapped.
std::string fold(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

// Splits into lines; treats both "\n" and "\r\n" as terminators.
std::vector<std::string> split_lines(std::string_view s);

std::optional<long long> parse_int(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// FNV-1a, used for cassette request digests. Stable across platforms.
std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 14695981039346656037ull);

std::string to_hex(std::uint64_t v);

// Half-up rounding helpers used by the report emitters. Internal values
// stay unrounded; these are display-only.
int percent_round(double fraction);
std::string format_fixed(double value, int decimals);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace streetpoll
