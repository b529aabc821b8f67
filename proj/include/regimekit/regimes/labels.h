#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/msar/model.h"

namespace regimekit::regimes {

enum class TrendLabel { Bullish, Bearish };

// The four Wyckoff-style market phases: trend state crossed with variance
// state. Bullish/LowVar -> Advance, Bullish/HighVar -> Accumulation,
// Bearish/HighVar -> Decline, Bearish/LowVar -> Distribution.
enum class RegimeLabel { Advance, Accumulation, Decline, Distribution };

std::string to_string(TrendLabel label);
std::string to_string(RegimeLabel label);
RegimeLabel regime_from_string(const std::string& name);

struct TrendSeries {
    std::vector<Date> dates;
    std::vector<TrendLabel> labels;
};

struct RegimeSeries {
    std::vector<Date> dates;
    std::vector<RegimeLabel> regime;
    std::vector<TrendLabel> trend;
    std::vector<msar::VarianceLabel> variance;

    std::size_t size() const { return dates.size(); }
    // Index of `date`, or nullopt when the date is not labeled.
    std::optional<std::size_t> index_of(Date date) const;
};

// Trend classification with Keltner hysteresis: flips Bullish when close
// rises above TMA + mult*ATR, Bearish when it falls below TMA - mult*ATR,
// and otherwise keeps its state. The initial state is the sign of
// (close - TMA) at the first date both are defined. Output starts at that
// date (warmup rows are dropped).
TrendSeries trend_regime(const data::PriceSeries& p, std::size_t tma_n = 250,
                         std::size_t atr_n = 20, double mult = 1.0);

// Four-way mapping of aligned trend and variance labels.
RegimeSeries combine(const TrendSeries& trend, const msar::VarianceSeries& variance);

struct RegimeSegment {
    RegimeLabel label;
    Date start;
    Date end;
    std::size_t length = 0;  // trading days
};

struct SegmentStats {
    std::size_t count = 0;
    double mean = 0.0;
    double stdev = 0.0;  // sample standard deviation
    double min = 0.0;
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double max = 0.0;
};

struct SegmentReport {
    std::vector<RegimeSegment> segments;
    SegmentStats stats;
};

// Maximal runs of constant label, plus descriptive stats over run lengths.
SegmentReport segments(const RegimeSeries& labels);

struct RegimeReturnStats {
    double mean_daily_return = 0.0;
    double daily_stdev = 0.0;
    std::size_t day_count = 0;
    double mean_segment_length = 0.0;
};

// Return statistics over each regime's date subsample; regimes with no days
// are absent from the result.
std::vector<std::pair<RegimeLabel, RegimeReturnStats>> regime_return_stats(
    const data::ReturnSeries& returns, const RegimeSeries& labels);

inline constexpr std::array<RegimeLabel, 4> kAllRegimes = {
    RegimeLabel::Advance, RegimeLabel::Accumulation, RegimeLabel::Decline,
    RegimeLabel::Distribution};

}  // namespace regimekit::regimes
