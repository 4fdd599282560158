#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cryptonet {

// Annotation timeline: labeled instants plotted against series output.
// CSV schema: label,ts,description — ts is ISO-8601 UTC or integer ms, the
// description field absorbs any remaining commas.
struct EventTimeline {
    struct Entry {
        std::string label;
        std::int64_t ts = 0;
        std::string description;
    };
    std::vector<Entry> entries;  // strictly increasing ts, unique labels

    void validate() const;
};

EventTimeline load_timeline(const std::filesystem::path& path);

// Appends an `event` column to a timestamped CSV: the labels of all events
// whose instant falls inside the row's bucket [ts, ts + width), joined by
// ';' in timestamp order. width_ms == 0 infers the width from consecutive
// row timestamps.
std::string annotate_csv(const std::filesystem::path& input, const EventTimeline& timeline,
                         std::int64_t width_ms = 0);

void annotate_csv_file(const std::filesystem::path& input, const EventTimeline& timeline,
                       const std::filesystem::path& output, std::int64_t width_ms = 0);

}  // namespace cryptonet
