#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>

namespace citrank {

// Day-resolution calendar date, stored as std::chrono::sys_days.
using Date = std::chrono::sys_days;

constexpr double kDaysPerYear = 365.25;

inline std::optional<Date> parse_date(const std::string& s) {
    int y = 0, m = 0, d = 0;
    char trailing = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &d, &trailing) != 3) return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

inline std::string format_date(Date date) {
    std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

inline int year_of(Date date) { return int(std::chrono::year_month_day{date}.year()); }

inline Date year_end(int year) {
    return Date{std::chrono::year{year} / std::chrono::December / 31};
}

inline Date add_years(Date date, int years) {
    std::chrono::year_month_day ymd{date};
    ymd += std::chrono::years{years};
    if (!ymd.ok()) ymd = ymd.year() / ymd.month() / std::chrono::last;  // Feb 29 -> Feb 28
    return Date{ymd};
}

inline long days_between(Date from, Date to) { return (to - from).count(); }

inline double years_between(Date from, Date to) {
    return double(days_between(from, to)) / kDaysPerYear;
}

}  // namespace citrank
