#pragma once

#include <string>
#include <vector>

#include "regimekit/common/date.h"
#include "regimekit/regimes/labels.h"

namespace regimekit::report {

struct EquityPoint {
    Date date;
    double equity = 0.0;
};

struct ProbPoint {
    Date date;
    double p_high = 0.0;
};

// Equity curve with one shaded span per regime segment. Each span rect
// carries data-start / data-end / data-label attributes so the chart can be
// reconciled with segments.csv.
std::string equity_regimes_svg(const std::vector<EquityPoint>& equity,
                               const std::vector<regimes::RegimeSegment>& segments);

// High-variance probability panel (one polyline in [0,1]).
std::string probability_svg(const std::vector<ProbPoint>& probs);

void write_file(const std::string& path, const std::string& content);

}  // namespace regimekit::report
