#include "regimekit/data/series.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "regimekit/common/error.h"

namespace regimekit::data {

void PriceSeries::validate() const {
    if (bars.empty()) {
        fail("EmptySeries", "price series '" + symbol + "' has no bars");
    }
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const Bar& bar = bars[i];
        if (!(bar.close > 0.0) || !std::isfinite(bar.close)) {
            fail("NonPositivePrice", "bar " + std::to_string(i) + " (" +
                                         bar.date.to_string() + ") has close " +
                                         std::to_string(bar.close));
        }
        if (bar.has_range()) {
            double body_low = bar.close;
            double body_high = bar.close;
            if (bar.open) {
                body_low = std::min(body_low, *bar.open);
                body_high = std::max(body_high, *bar.open);
            }
            if (!(*bar.low <= body_low && body_high <= *bar.high)) {
                fail("InvalidBar", "bar " + std::to_string(i) + " (" + bar.date.to_string() +
                                       ") violates low <= open/close <= high");
            }
        }
        if (i > 0 && !(bars[i - 1].date < bar.date)) {
            fail("DuplicateDate", "bar " + std::to_string(i) + " (" + bar.date.to_string() +
                                      ") does not strictly follow the previous date");
        }
    }
}

ReturnSeries to_returns(const PriceSeries& p, ReturnKind kind) {
    if (p.bars.size() < 2) {
        fail("SeriesTooShort", "need at least 2 bars to form returns, got " +
                                   std::to_string(p.bars.size()));
    }
    ReturnSeries out;
    out.symbol = p.symbol;
    out.kind = kind;
    out.dates.reserve(p.bars.size() - 1);
    out.values.reserve(p.bars.size() - 1);
    for (std::size_t i = 1; i < p.bars.size(); ++i) {
        double ratio = p.bars[i].close / p.bars[i - 1].close;
        double value = kind == ReturnKind::Log ? std::log(ratio) : ratio - 1.0;
        if (!std::isfinite(value)) {
            fail("NonPositivePrice", "non-finite return at " + p.bars[i].date.to_string());
        }
        out.dates.push_back(p.bars[i].date);
        out.values.push_back(value);
    }
    return out;
}

std::pair<PriceSeries, PriceSeries> align(const PriceSeries& a, const PriceSeries& b) {
    if (a.bars.empty() || b.bars.empty()) {
        fail("EmptyIntersection", "cannot align an empty series");
    }
    std::unordered_set<std::int32_t> b_dates;
    b_dates.reserve(b.bars.size());
    for (const Bar& bar : b.bars) {
        b_dates.insert(bar.date.days());
    }

    PriceSeries out_a{a.symbol, {}};
    std::unordered_set<std::int32_t> common;
    for (const Bar& bar : a.bars) {
        if (b_dates.count(bar.date.days())) {
            out_a.bars.push_back(bar);
            common.insert(bar.date.days());
        }
    }
    PriceSeries out_b{b.symbol, {}};
    for (const Bar& bar : b.bars) {
        if (common.count(bar.date.days())) {
            out_b.bars.push_back(bar);
        }
    }
    if (out_a.bars.empty()) {
        fail("EmptyIntersection", "series '" + a.symbol + "' and '" + b.symbol +
                                      "' share no dates");
    }
    return {std::move(out_a), std::move(out_b)};
}

}  // namespace regimekit::data
