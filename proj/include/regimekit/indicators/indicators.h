#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "regimekit/data/series.h"

namespace regimekit::indicators {

// A per-date real series aligned to its source bars. The first `warmup`
// entries are undefined and held as NaN, never zero-filled.
struct IndicatorSeries {
    std::vector<Date> dates;
    std::vector<double> values;
    std::size_t warmup = 0;

    std::size_t size() const { return values.size(); }
    bool defined(std::size_t i) const { return i >= warmup; }
    double at(std::size_t i) const { return values[i]; }
};

struct Band {
    IndicatorSeries middle;
    IndicatorSeries upper;
    IndicatorSeries lower;
};

// Raw closes wrapped as an IndicatorSeries (warmup 0); the universal
// left-hand side of the crossing rules.
IndicatorSeries close_series(const data::PriceSeries& p);

// Constant reference line sharing `like`'s dates (for RSI thresholds etc.).
IndicatorSeries constant_series(const IndicatorSeries& like, double value);

// Simple moving average over the trailing n closes.
IndicatorSeries sma(const IndicatorSeries& p, std::size_t n);

// Exponential moving average, alpha = 2/(n+1), seeded at the first close.
IndicatorSeries ema(const IndicatorSeries& p, std::size_t n);

// Triangular moving average: sma(sma(p, ceil((n+1)/2)), floor(n/2)+1).
IndicatorSeries triangular_ma(const IndicatorSeries& p, std::size_t n);

// Wilder-smoothed average true range. True range falls back to
// |close_t - close_{t-1}| for close-only bars.
IndicatorSeries atr(const data::PriceSeries& p, std::size_t n);

// Bands at ma +/- mult * atr.
Band keltner(const IndicatorSeries& ma, const IndicatorSeries& atr_series, double mult);

// Bands at sma(n) +/- k rolling population standard deviations.
Band bollinger(const IndicatorSeries& p, std::size_t n, double k);

// Wilder RSI on close changes; all-loss windows read 0, all-gain 100.
IndicatorSeries rsi(const IndicatorSeries& p, std::size_t n);

struct MacdResult {
    IndicatorSeries macd_line;
    IndicatorSeries signal_line;
    IndicatorSeries histogram;
};
MacdResult macd(const IndicatorSeries& p, std::size_t fast, std::size_t slow,
                std::size_t signal);

struct SwingResult {
    IndicatorSeries high;
    IndicatorSeries low;
};
// Rolling max/min of close over the trailing lookback window.
SwingResult swing_extremes(const IndicatorSeries& p, std::size_t lookback);

inline constexpr std::array<double, 5> kFibRatios = {0.236, 0.382, 0.5, 0.618, 1.0};

// level(r) = swing_high - r * (swing_high - swing_low).
double fib_level(double swing_low, double swing_high, double ratio);
std::array<double, 5> fib_levels(double swing_low, double swing_high);

// Per-date retracement line at `ratio` between the rolling swing extremes.
IndicatorSeries fib_series(const SwingResult& swings, double ratio);

}  // namespace regimekit::indicators
