#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/indicators/indicators.h"
#include "regimekit/regimes/labels.h"
#include "regimekit/strategy/spec.h"

namespace regimekit::strategy {

// Target exposure per date: +1 long, -1 short, 0 flat (unit = full equity).
struct PositionSeries {
    std::vector<Date> dates;
    std::vector<int> position;

    std::size_t size() const { return position.size(); }
};

struct SignalEvent {
    Date date;
    std::string rule;
    std::string action;  // enter_long / enter_short / exit
};

struct EvalResult {
    PositionSeries positions;
    std::vector<SignalEvent> log;
};

struct SwitchEvent {
    Date change_date;   // when the regime label changed
    regimes::RegimeLabel from;
    regimes::RegimeLabel to;
    Date confirm_date;  // when the price move confirmed the switch
};

struct AdaptiveResult {
    PositionSeries positions;
    std::vector<SignalEvent> log;
    std::vector<SwitchEvent> switches;
};

// Every indicator series the rule sets reference, precomputed once per price
// series and keyed by their parameters.
struct IndicatorBundle {
    std::vector<Date> dates;
    indicators::IndicatorSeries close;
    std::map<std::pair<std::size_t, double>, indicators::Band> bollinger;   // (n, k)
    std::map<std::size_t, indicators::IndicatorSeries> rsi;                 // period
    std::map<std::size_t, indicators::IndicatorSeries> ema;                 // span
    std::map<std::size_t, indicators::IndicatorSeries> atr;                 // window
    std::map<std::pair<std::size_t, double>, indicators::IndicatorSeries> fib;  // (lookback, ratio)
};

// Computes everything the given specs need. Throws WindowExceedsSeries via
// the indicator layer when the series is too short.
IndicatorBundle build_bundle(const data::PriceSeries& p,
                             const std::vector<StrategySpec>& specs);

// Per-date finite-state evaluation: when flat, any entry rule crossing sets
// the position to the spec's direction at that bar; when positioned, any
// exit rule or a take-profit/stop-loss crossing flattens it. Simultaneous
// signals resolve exit-first, and re-entry waits for the next bar. Throws
// MissingIndicator when the bundle lacks a required series.
EvalResult evaluate(const StrategySpec& spec, const IndicatorBundle& bundle);

// The regime-switching meta strategy: runs the spec of the prevailing regime
// and, on a label change, keeps the incumbent until the close has moved 1%
// in the bullish direction (for a bullish target) or 5% in the bearish
// direction past the change-date close. Confirmation exits the incumbent
// that bar; the incoming spec starts flat.
AdaptiveResult adaptive(const regimes::RegimeSeries& labels, const AdaptiveConfig& cfg,
                        const IndicatorBundle& bundle,
                        const std::vector<StrategySpec>& specs);

// Zeroes the position outside dates labeled `regime` (the restrict-to-regime
// backtest scope).
PositionSeries restrict_positions(const PositionSeries& positions,
                                  const regimes::RegimeSeries& labels,
                                  regimes::RegimeLabel regime);

}  // namespace regimekit::strategy
