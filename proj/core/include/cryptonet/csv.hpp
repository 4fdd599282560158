#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cryptonet::csv {

// All artifact files are plain comma-separated UTF-8 with LF line endings and
// no quoting; fields therefore must not contain commas or newlines. Only the
// last field of a row may absorb remaining commas (see split with max_fields).

std::vector<std::string> split(std::string_view line, std::size_t max_fields = 0);

// Shortest round-trip decimal representation (to_chars), locale-free.
std::string format_double(double v);
double parse_double(std::string_view field, std::string_view context);
std::int64_t parse_int(std::string_view field, std::string_view context);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::filesystem::path& path, std::size_t max_fields = 0);

// Writes lines atomically (temp file + rename) so partially written stores
// are never observed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cryptonet::csv
