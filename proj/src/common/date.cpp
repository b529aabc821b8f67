#include "regimekit/common/date.h"

#include <chrono>
#include <cstdio>

#include "regimekit/common/error.h"

namespace regimekit {

namespace {

std::chrono::year_month_day to_ymd(std::int32_t days) {
    return std::chrono::year_month_day(
        std::chrono::sys_days(std::chrono::days(days)));
}

bool read_int(const std::string& text, std::size_t& pos, int width, int& out) {
    int value = 0;
    int digits = 0;
    while (pos < text.size() && digits < width &&
           text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
    }
    if (digits == 0) {
        return false;
    }
    out = value;
    return true;
}

}  // namespace

Date Date::from_ymd(int year, int month, int day) {
    std::chrono::year_month_day ymd(std::chrono::year(year),
                                    std::chrono::month(static_cast<unsigned>(month)),
                                    std::chrono::day(static_cast<unsigned>(day)));
    if (!ymd.ok()) {
        fail("UnparseableDate", "invalid calendar date " + std::to_string(year) + "-" +
                                    std::to_string(month) + "-" + std::to_string(day));
    }
    auto days = std::chrono::sys_days(ymd).time_since_epoch().count();
    return Date(static_cast<std::int32_t>(days));
}

Date Date::parse(const std::string& text, const std::string& format) {
    int year = 0, month = 0, day = 0;
    bool has_year = false, has_month = false, has_day = false;
    std::size_t pos = 0;
    for (std::size_t f = 0; f < format.size(); ++f) {
        if (format[f] == '%' && f + 1 < format.size()) {
            char code = format[++f];
            bool ok = false;
            switch (code) {
                case 'Y': ok = read_int(text, pos, 4, year); has_year = ok; break;
                case 'm': ok = read_int(text, pos, 2, month); has_month = ok; break;
                case 'd': ok = read_int(text, pos, 2, day); has_day = ok; break;
                default: break;
            }
            if (!ok) {
                fail("UnparseableDate", "'" + text + "' does not match format '" + format + "'");
            }
        } else {
            if (pos >= text.size() || text[pos] != format[f]) {
                fail("UnparseableDate", "'" + text + "' does not match format '" + format + "'");
            }
            ++pos;
        }
    }
    if (pos != text.size() || !has_year || !has_month || !has_day) {
        fail("UnparseableDate", "'" + text + "' does not match format '" + format + "'");
    }
    return from_ymd(year, month, day);
}

int Date::year() const { return static_cast<int>(to_ymd(days_).year()); }
int Date::month() const { return static_cast<int>(static_cast<unsigned>(to_ymd(days_).month())); }
int Date::day() const { return static_cast<int>(static_cast<unsigned>(to_ymd(days_).day())); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year(), month(), day());
    return buf;
}

}  // namespace regimekit
