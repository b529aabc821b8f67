#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace regimekit {

// Calendar date, day resolution, no timezone. Stored as days since 1970-01-01
// so ordering and day arithmetic are integer operations.
class Date {
public:
    Date() = default;
    explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_ymd(int year, int month, int day);

    // Parses `text` against `format`, which understands the tokens
    // %Y, %m, %d plus literal separators (default ISO-8601).
    static Date parse(const std::string& text, const std::string& format = "%Y-%m-%d");

    std::int32_t days() const noexcept { return days_; }
    Date next() const { return Date(days_ + 1); }

    int year() const;
    int month() const;
    int day() const;

    std::string to_string() const;  // YYYY-MM-DD

    auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace regimekit
