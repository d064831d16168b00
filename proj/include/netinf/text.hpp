#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace netinf::text {

/// Shortest round-trip decimal representation.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

bool parse_double(std::string_view s, double& out);
bool parse_uint(std::string_view s, std::uint64_t& out);
bool parse_int(std::string_view s, std::int64_t& out);

std::vector<std::string_view> split(std::string_view s, char sep);

/// Reads a whole file, throwing std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);

/// Writes to `path` through a sibling temporary file and rename, so readers
/// never observe a partially written file.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace netinf::text
