#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regimekit/common/date.h"

namespace regimekit::data {

// One daily bar. Close is mandatory; open/high/low exist only for assets
// that publish them, so close-only bars are first-class.
struct Bar {
    Date date;
    std::optional<double> open;
    std::optional<double> high;
    std::optional<double> low;
    double close = 0.0;

    bool has_range() const { return high.has_value() && low.has_value(); }
};

struct PriceSeries {
    std::string symbol;
    std::vector<Bar> bars;

    std::size_t size() const { return bars.size(); }

    // Enforces: non-empty, strictly increasing dates, positive closes,
    // low <= min(open, close) <= max(open, close) <= high where present.
    void validate() const;
};

enum class ReturnKind { Log, Simple };

struct ReturnSeries {
    std::string symbol;
    std::vector<Date> dates;
    std::vector<double> values;
    ReturnKind kind = ReturnKind::Log;

    std::size_t size() const { return values.size(); }
};

// value_t = ln(close_t / close_{t-1}) or close_t / close_{t-1} - 1,
// dated by the later bar. Throws SeriesTooShort for fewer than 2 bars.
ReturnSeries to_returns(const PriceSeries& p, ReturnKind kind);

// Restricts both series to the intersection of their dates. Throws
// EmptyIntersection when the date sets are disjoint.
std::pair<PriceSeries, PriceSeries> align(const PriceSeries& a, const PriceSeries& b);

}  // namespace regimekit::data
