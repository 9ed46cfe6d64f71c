#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace dgkit::dates {

// Civil calendar date. Arithmetic is in whole days via the epoch offset.
struct Date {
    int year = 1970;
    unsigned month = 1;
    unsigned day = 1;

    auto operator<=>(const Date&) const = default;
};

struct TimeOfDay {
    unsigned hour = 0;
    unsigned minute = 0;
    unsigned second = 0;
    bool has_seconds = false;

    auto operator<=>(const TimeOfDay&) const = default;
};

struct DateTime {
    Date date;
    std::optional<TimeOfDay> time;
};

bool is_valid(const Date& d);

// Days since 1970-01-01 (negative before the epoch).
std::int64_t to_epoch_days(const Date& d);
Date from_epoch_days(std::int64_t days);
Date add_days(const Date& d, std::int64_t days);

// Strict "YYYY-MM-DD"; rejects impossible calendar dates.
std::optional<Date> parse_iso_date(std::string_view s);
// "HH:MM" or "HH:MM:SS".
std::optional<TimeOfDay> parse_iso_time(std::string_view s);
// "<date>" or "<date>T<time>".
std::optional<DateTime> parse_iso_datetime(std::string_view s);

std::string format_iso(const Date& d);
std::string format_iso(const TimeOfDay& t);
std::string format_iso(const DateTime& dt);

} // namespace dgkit::dates
