#include "cryptonet/timeline.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "cryptonet/csv.hpp"
#include "cryptonet/errors.hpp"
#include "cryptonet/time_utils.hpp"

namespace cryptonet {

void EventTimeline::validate() const {
    std::set<std::string> labels;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.label.empty()) {
            throw ValidationError(fmt::format("timeline entry {} has an empty label", i));
        }
        if (!labels.insert(e.label).second) {
            throw ValidationError(fmt::format("duplicate timeline label '{}'", e.label));
        }
        if (i > 0 && entries[i - 1].ts >= e.ts) {
            throw ValidationError(fmt::format("timeline timestamps must be strictly "
                                              "increasing, entry {} is not",
                                              i));
        }
    }
}

EventTimeline load_timeline(const std::filesystem::path& path) {
    const auto table = csv::read_table(path, 3);
    if (table.header.size() < 2 || table.header[0] != "label" || table.header[1] != "ts") {
        throw SchemaError(fmt::format("'{}': timeline header must be label,ts,description",
                                      path.string()));
    }
    EventTimeline timeline;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        if (row.size() < 2) {
            throw SchemaError(fmt::format("'{}' row {}: too few fields", path.string(), i + 2));
        }
        EventTimeline::Entry e;
        e.label = row[0];
        e.ts = parse_utc_ms(row[1]);
        if (row.size() > 2) e.description = row[2];
        timeline.entries.push_back(std::move(e));
    }
    timeline.validate();
    return timeline;
}

std::string annotate_csv(const std::filesystem::path& input, const EventTimeline& timeline,
                         std::int64_t width_ms) {
    timeline.validate();
    const auto table = csv::read_table(input);
    if (table.header.empty()) {
        throw SchemaError(fmt::format("'{}' has no header", input.string()));
    }
    static const std::set<std::string> ts_columns = {"ts", "window_end_ts", "bucket_start_ts"};
    if (!ts_columns.contains(table.header[0])) {
        throw SchemaError(fmt::format("'{}': first column '{}' is not a known timestamp column",
                                      input.string(), table.header[0]));
    }

    std::vector<std::int64_t> row_ts;
    row_ts.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        row_ts.push_back(csv::parse_int(table.rows[i][0],
                                        fmt::format("{} row {}", input.string(), i + 2)));
    }
    if (width_ms <= 0) {
        for (std::size_t i = 1; i < row_ts.size(); ++i) {
            const std::int64_t d = row_ts[i] - row_ts[i - 1];
            if (d > 0 && (width_ms <= 0 || d < width_ms)) width_ms = d;
        }
        if (width_ms <= 0) {
            throw InvalidParameter(fmt::format("cannot infer bucket width of '{}'; pass one "
                                               "explicitly",
                                               input.string()));
        }
    }

    std::string out;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c > 0) out += ',';
        out += table.header[c];
    }
    out += ",event\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        for (std::size_t c = 0; c < table.rows[i].size(); ++c) {
            if (c > 0) out += ',';
            out += table.rows[i][c];
        }
        std::string labels;
        for (const auto& e : timeline.entries) {
            if (e.ts >= row_ts[i] && e.ts < row_ts[i] + width_ms) {
                if (!labels.empty()) labels += ';';
                labels += e.label;
            }
        }
        out += ',';
        out += labels;
        out += '\n';
    }
    return out;
}

void annotate_csv_file(const std::filesystem::path& input, const EventTimeline& timeline,
                       const std::filesystem::path& output, std::int64_t width_ms) {
    csv::write_file_atomic(output, annotate_csv(input, timeline, width_ms));
}

}  // namespace cryptonet
