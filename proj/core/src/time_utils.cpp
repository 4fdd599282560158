#include "cryptonet/time_utils.hpp"

#include <charconv>
#include <cstdio>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"

namespace cryptonet {

namespace {

// Days from civil date, epoch 1970-01-01 (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yy + (m <= 2));
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

std::int64_t parse_utc_ms(std::string_view text) {
    if (all_digits(text) && text.size() > 4) {
        std::int64_t v = 0;
        std::from_chars(text.data(), text.data() + text.size(), v);
        return v;
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    std::string buf(text);
    if (!buf.empty() && buf.back() == 'Z') buf.pop_back();
    for (char& c : buf) {
        if (c == 'T') c = ' ';
    }
    const int n = std::sscanf(buf.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s);
    if (n != 3 && n != 5 && n != 6) {
        throw InvalidParameter(fmt::format("unparseable UTC timestamp '{}'", text));
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59 ||
        s < 0 || s > 60) {
        throw InvalidParameter(fmt::format("timestamp field out of range in '{}'", text));
    }
    return days_from_civil(y, mo, d) * kMsPerDay +
           (static_cast<std::int64_t>(h) * 3600 + mi * 60 + s) * 1000;
}

std::string format_utc_ms(std::int64_t ms) {
    std::int64_t days = ms / kMsPerDay;
    std::int64_t rem = ms % kMsPerDay;
    if (rem < 0) {
        rem += kMsPerDay;
        days -= 1;
    }
    int y, mo, d;
    civil_from_days(days, y, mo, d);
    const int sec_of_day = static_cast<int>(rem / 1000);
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", y, mo, d,
                       sec_of_day / 3600, (sec_of_day / 60) % 60, sec_of_day % 60);
}

std::int64_t parse_interval(std::string_view text) {
    if (text == "1m") return kMsPerMinute;
    if (text == "1h") return kMsPerHour;
    if (text == "1d") return kMsPerDay;
    if (text.size() > 2 && text.substr(text.size() - 2) == "ms") {
        std::int64_t v = 0;
        const auto* first = text.data();
        const auto* last = text.data() + text.size() - 2;
        const auto res = std::from_chars(first, last, v);
        if (res.ec == std::errc{} && res.ptr == last && v > 0) return v;
    }
    throw InvalidParameter(fmt::format("unsupported bar interval '{}'", text));
}

std::string interval_label(std::int64_t interval_ms) {
    switch (interval_ms) {
        case kMsPerMinute: return "1m";
        case kMsPerHour: return "1h";
        case kMsPerDay: return "1d";
        default: return fmt::format("{}ms", interval_ms);
    }
}

}  // namespace cryptonet
