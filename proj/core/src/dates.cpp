#include "dgkit/dates.hpp"

#include <chrono>
#include <cstdio>

namespace dgkit::dates {

namespace {
using namespace std::chrono;

year_month_day to_ymd(const Date& d) {
    return year_month_day{year{d.year}, month{d.month}, day{d.day}};
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

unsigned to_uint(std::string_view s) {
    unsigned v = 0;
    for (char c : s) v = v * 10 + static_cast<unsigned>(c - '0');
    return v;
}
} // namespace

bool is_valid(const Date& d) {
    return to_ymd(d).ok();
}

std::int64_t to_epoch_days(const Date& d) {
    return sys_days{to_ymd(d)}.time_since_epoch().count();
}

Date from_epoch_days(std::int64_t days) {
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    return Date{int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day())};
}

Date add_days(const Date& d, std::int64_t days) {
    return from_epoch_days(to_epoch_days(d) + days);
}

std::optional<Date> parse_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto y = s.substr(0, 4), m = s.substr(5, 2), dd = s.substr(8, 2);
    if (!all_digits(y) || !all_digits(m) || !all_digits(dd)) return std::nullopt;
    Date d{static_cast<int>(to_uint(y)), to_uint(m), to_uint(dd)};
    if (!is_valid(d)) return std::nullopt;
    return d;
}

std::optional<TimeOfDay> parse_iso_time(std::string_view s) {
    if (s.size() != 5 && s.size() != 8) return std::nullopt;
    if (s[2] != ':') return std::nullopt;
    auto h = s.substr(0, 2), m = s.substr(3, 2);
    if (!all_digits(h) || !all_digits(m)) return std::nullopt;
    TimeOfDay t{to_uint(h), to_uint(m), 0, false};
    if (s.size() == 8) {
        if (s[5] != ':') return std::nullopt;
        auto sec = s.substr(6, 2);
        if (!all_digits(sec)) return std::nullopt;
        t.second = to_uint(sec);
        t.has_seconds = true;
    }
    if (t.hour > 23 || t.minute > 59 || t.second > 59) return std::nullopt;
    return t;
}

std::optional<DateTime> parse_iso_datetime(std::string_view s) {
    auto tpos = s.find('T');
    if (tpos == std::string_view::npos) {
        auto d = parse_iso_date(s);
        if (!d) return std::nullopt;
        return DateTime{*d, std::nullopt};
    }
    auto d = parse_iso_date(s.substr(0, tpos));
    auto t = parse_iso_time(s.substr(tpos + 1));
    if (!d || !t) return std::nullopt;
    return DateTime{*d, *t};
}

std::string format_iso(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
    return buf;
}

std::string format_iso(const TimeOfDay& t) {
    char buf[16];
    if (t.has_seconds)
        std::snprintf(buf, sizeof buf, "%02u:%02u:%02u", t.hour, t.minute, t.second);
    else
        std::snprintf(buf, sizeof buf, "%02u:%02u", t.hour, t.minute);
    return buf;
}

std::string format_iso(const DateTime& dt) {
    std::string out = format_iso(dt.date);
    if (dt.time) {
        out += 'T';
        out += format_iso(*dt.time);
    }
    return out;
}

} // namespace dgkit::dates
