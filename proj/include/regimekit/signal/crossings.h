#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/indicators/indicators.h"
#include "regimekit/regimes/labels.h"

namespace regimekit::signal {

enum class CrossKind { CrossAbove, CrossBelow };

std::string to_string(CrossKind kind);

struct CrossEvent {
    Date date;
    std::size_t index = 0;  // position in the scanned series
    CrossKind kind = CrossKind::CrossAbove;
    std::string subject;
    std::optional<regimes::RegimeLabel> regime;
};

// Strict crossings of `a` through `b`: an event at t needs a strictly on one
// side at the last strictly-unequal bar and strictly on the other side at t.
// Equal values generate no event; a flat touch followed by continuation
// counts at the continuation bar. When `labels` is given, events are tagged
// with the prevailing regime and events outside the labeled range dropped.
// Throws NoOverlap when the two series share no defined range.
std::vector<CrossEvent> detect_crossings(const indicators::IndicatorSeries& a,
                                         const indicators::IndicatorSeries& b,
                                         const std::string& subject,
                                         const regimes::RegimeSeries* labels = nullptr);

std::vector<CrossEvent> detect_crossings(const indicators::IndicatorSeries& a, double threshold,
                                         const std::string& subject,
                                         const regimes::RegimeSeries* labels = nullptr);

// Mean cumulative-return path following the events of one (subject, kind,
// regime) group. Offset 0 is the event date (return 0 by construction); each
// event's path stops at the horizon, a regime change, or the series end,
// whichever comes first.
struct ForwardPath {
    std::string subject;
    CrossKind kind = CrossKind::CrossAbove;
    regimes::RegimeLabel regime = regimes::RegimeLabel::Advance;
    std::size_t horizon = 30;
    std::vector<double> mean_cum_return;  // indexed by offset-1
    std::vector<std::size_t> n_events;    // events still alive at each offset
    std::size_t total_events = 0;
};

std::vector<ForwardPath> forward_paths(const std::vector<CrossEvent>& events,
                                       const data::ReturnSeries& returns,
                                       const regimes::RegimeSeries& labels,
                                       std::size_t horizon = 30);

}  // namespace regimekit::signal
