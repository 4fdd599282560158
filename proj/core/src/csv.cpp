#include "cryptonet/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet::csv {

std::vector<std::string> split(std::string_view line, std::size_t max_fields) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        if (max_fields > 0 && out.size() + 1 == max_fields) {
            out.emplace_back(line.substr(start));
            return out;
        }
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, std::string_view context) {
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw SchemaError(fmt::format("{}: expected number, got '{}'", context, field));
    }
    return v;
}

std::int64_t parse_int(std::string_view field, std::string_view context) {
    std::int64_t v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
        throw SchemaError(fmt::format("{}: expected integer, got '{}'", context, field));
    }
    return v;
}

Table read_table(const std::filesystem::path& path, std::size_t max_fields) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    Table t;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            t.header = split(line, max_fields);
            first = false;
        } else {
            t.rows.push_back(split(line, max_fields));
        }
    }
    if (first) {
        throw SchemaError(fmt::format("'{}' is empty, expected a header row", path.string()));
    }
    return t;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) {
            throw IoError(fmt::format("cannot create directory '{}': {}", parent.string(),
                                      ec.message()));
        }
    }
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError(fmt::format("cannot open '{}' for writing", tmp));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw IoError(fmt::format("short write to '{}'", tmp));
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError(fmt::format("cannot rename '{}' to '{}': {}", tmp, path.string(),
                                  ec.message()));
    }
}

}  // namespace cryptonet::csv
