#include "regimekit/regimes/labels.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "regimekit/common/error.h"
#include "regimekit/indicators/indicators.h"

namespace regimekit::regimes {

std::string to_string(TrendLabel label) {
    return label == TrendLabel::Bullish ? "bullish" : "bearish";
}

std::string to_string(RegimeLabel label) {
    switch (label) {
        case RegimeLabel::Advance: return "advance";
        case RegimeLabel::Accumulation: return "accumulation";
        case RegimeLabel::Decline: return "decline";
        case RegimeLabel::Distribution: return "distribution";
    }
    return "?";
}

RegimeLabel regime_from_string(const std::string& name) {
    for (RegimeLabel label : kAllRegimes) {
        if (to_string(label) == name) {
            return label;
        }
    }
    fail("UnknownRegime", "'" + name + "' is not a regime label");
}

std::optional<std::size_t> RegimeSeries::index_of(Date date) const {
    auto it = std::lower_bound(dates.begin(), dates.end(), date);
    if (it == dates.end() || *it != date) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - dates.begin());
}

TrendSeries trend_regime(const data::PriceSeries& p, std::size_t tma_n, std::size_t atr_n,
                         double mult) {
    if (!(mult > 0.0)) {
        fail("InvalidArgument", "hysteresis multiple must be positive");
    }
    indicators::IndicatorSeries closes = indicators::close_series(p);
    indicators::IndicatorSeries tma;
    indicators::IndicatorSeries atr_series;
    try {
        tma = indicators::triangular_ma(closes, tma_n);
        atr_series = indicators::atr(p, atr_n);
    } catch (const Error& e) {
        fail("InsufficientHistory", e.what());
    }

    std::size_t start = std::max(tma.warmup, atr_series.warmup);
    if (start >= closes.size()) {
        fail("InsufficientHistory", "series ends before TMA/ATR warm up");
    }

    TrendSeries out;
    out.dates.reserve(closes.size() - start);
    out.labels.reserve(closes.size() - start);

    TrendLabel state = closes.values[start] >= tma.values[start] ? TrendLabel::Bullish
                                                                 : TrendLabel::Bearish;
    for (std::size_t t = start; t < closes.size(); ++t) {
        double upper = tma.values[t] + mult * atr_series.values[t];
        double lower = tma.values[t] - mult * atr_series.values[t];
        if (closes.values[t] > upper) {
            state = TrendLabel::Bullish;
        } else if (closes.values[t] < lower) {
            state = TrendLabel::Bearish;
        }
        out.dates.push_back(closes.dates[t]);
        out.labels.push_back(state);
    }
    return out;
}

RegimeSeries combine(const TrendSeries& trend, const msar::VarianceSeries& variance) {
    if (trend.dates.size() != variance.dates.size() ||
        !std::equal(trend.dates.begin(), trend.dates.end(), variance.dates.begin())) {
        fail("LengthMismatch", "trend and variance series must share their dates");
    }
    RegimeSeries out;
    out.dates = trend.dates;
    out.trend = trend.labels;
    out.variance = variance.labels;
    out.regime.reserve(trend.labels.size());
    for (std::size_t t = 0; t < trend.labels.size(); ++t) {
        bool bullish = trend.labels[t] == TrendLabel::Bullish;
        bool low_var = variance.labels[t] == msar::VarianceLabel::Low;
        RegimeLabel label = bullish ? (low_var ? RegimeLabel::Advance : RegimeLabel::Accumulation)
                                    : (low_var ? RegimeLabel::Distribution : RegimeLabel::Decline);
        out.regime.push_back(label);
    }
    return out;
}

namespace {

double percentile(std::vector<double> sorted, double alpha) {
    double pos = alpha * static_cast<double>(sorted.size() - 1);
    std::size_t idx = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(idx);
    if (idx + 1 < sorted.size()) {
        return sorted[idx] * (1.0 - frac) + sorted[idx + 1] * frac;
    }
    return sorted.back();
}

}  // namespace

SegmentReport segments(const RegimeSeries& labels) {
    if (labels.size() == 0) {
        fail("EmptySeries", "cannot segment an empty label series");
    }
    SegmentReport report;
    std::size_t run_start = 0;
    for (std::size_t t = 1; t <= labels.size(); ++t) {
        if (t == labels.size() || labels.regime[t] != labels.regime[run_start]) {
            report.segments.push_back({labels.regime[run_start], labels.dates[run_start],
                                       labels.dates[t - 1], t - run_start});
            run_start = t;
        }
    }

    std::vector<double> lengths;
    lengths.reserve(report.segments.size());
    for (const auto& seg : report.segments) {
        lengths.push_back(static_cast<double>(seg.length));
    }
    std::sort(lengths.begin(), lengths.end());

    SegmentStats& s = report.stats;
    s.count = lengths.size();
    double sum = 0.0;
    for (double v : lengths) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(lengths.size());
    double acc = 0.0;
    for (double v : lengths) {
        acc += (v - s.mean) * (v - s.mean);
    }
    s.stdev = lengths.size() > 1 ? std::sqrt(acc / static_cast<double>(lengths.size() - 1)) : 0.0;
    s.min = lengths.front();
    s.max = lengths.back();
    s.q25 = percentile(lengths, 0.25);
    s.median = percentile(lengths, 0.50);
    s.q75 = percentile(lengths, 0.75);
    return report;
}

std::vector<std::pair<RegimeLabel, RegimeReturnStats>> regime_return_stats(
    const data::ReturnSeries& returns, const RegimeSeries& labels) {
    std::map<RegimeLabel, std::vector<double>> samples;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        auto idx = labels.index_of(returns.dates[i]);
        if (idx.has_value()) {
            samples[labels.regime[*idx]].push_back(returns.values[i]);
        }
    }

    SegmentReport report = segments(labels);
    std::map<RegimeLabel, std::pair<double, std::size_t>> seg_lengths;
    for (const auto& seg : report.segments) {
        auto& entry = seg_lengths[seg.label];
        entry.first += static_cast<double>(seg.length);
        entry.second += 1;
    }

    std::vector<std::pair<RegimeLabel, RegimeReturnStats>> out;
    for (RegimeLabel label : kAllRegimes) {
        auto it = samples.find(label);
        if (it == samples.end() || it->second.empty()) {
            continue;  // regimes with zero days are absent, not zero
        }
        const auto& values = it->second;
        RegimeReturnStats stats;
        stats.day_count = values.size();
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        stats.mean_daily_return = sum / static_cast<double>(values.size());
        double acc = 0.0;
        for (double v : values) {
            acc += (v - stats.mean_daily_return) * (v - stats.mean_daily_return);
        }
        stats.daily_stdev =
            values.size() > 1 ? std::sqrt(acc / static_cast<double>(values.size() - 1)) : 0.0;
        auto seg_it = seg_lengths.find(label);
        if (seg_it != seg_lengths.end() && seg_it->second.second > 0) {
            stats.mean_segment_length =
                seg_it->second.first / static_cast<double>(seg_it->second.second);
        }
        out.emplace_back(label, stats);
    }
    return out;
}

}  // namespace regimekit::regimes
