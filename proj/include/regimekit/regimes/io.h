#pragma once

#include <string>

#include "regimekit/regimes/labels.h"

namespace regimekit::regimes {

// regimes.csv: date,trend,variance,regime
void write_regime_csv(const std::string& path, const RegimeSeries& series);
RegimeSeries read_regime_csv(const std::string& path);

// segments.csv: label,start,end,length
void write_segments_csv(const std::string& path, const std::vector<RegimeSegment>& segments);
std::vector<RegimeSegment> read_segments_csv(const std::string& path);

}  // namespace regimekit::regimes
