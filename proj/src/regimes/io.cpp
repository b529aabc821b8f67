#include "regimekit/regimes/io.h"

#include <fstream>

#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"

namespace regimekit::regimes {

void write_regime_csv(const std::string& path, const RegimeSeries& series) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "date,trend,variance,regime\n";
    for (std::size_t t = 0; t < series.size(); ++t) {
        out << series.dates[t].to_string() << ',' << to_string(series.trend[t]) << ','
            << msar::to_string(series.variance[t]) << ',' << to_string(series.regime[t])
            << '\n';
    }
}

RegimeSeries read_regime_csv(const std::string& path) {
    csv::Table table = csv::read_table(path);
    if (table.header != std::vector<std::string>{"date", "trend", "variance", "regime"}) {
        fail("InvalidRegimeCsv", "'" + path + "' must have columns date,trend,variance,regime");
    }
    RegimeSeries series;
    for (const auto& row : table.rows) {
        if (row.size() != 4) {
            fail("InvalidRegimeCsv", "'" + path + "' has a ragged row");
        }
        series.dates.push_back(Date::parse(row[0]));
        series.trend.push_back(row[1] == "bullish" ? TrendLabel::Bullish : TrendLabel::Bearish);
        series.variance.push_back(row[2] == "low" ? msar::VarianceLabel::Low
                                                  : msar::VarianceLabel::High);
        series.regime.push_back(regime_from_string(row[3]));
    }
    return series;
}

void write_segments_csv(const std::string& path, const std::vector<RegimeSegment>& segments) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "label,start,end,length\n";
    for (const auto& seg : segments) {
        out << to_string(seg.label) << ',' << seg.start.to_string() << ','
            << seg.end.to_string() << ',' << seg.length << '\n';
    }
}

std::vector<RegimeSegment> read_segments_csv(const std::string& path) {
    csv::Table table = csv::read_table(path);
    if (table.header != std::vector<std::string>{"label", "start", "end", "length"}) {
        fail("InvalidRegimeCsv", "'" + path + "' must have columns label,start,end,length");
    }
    std::vector<RegimeSegment> segments;
    for (const auto& row : table.rows) {
        if (row.size() != 4) {
            fail("InvalidRegimeCsv", "'" + path + "' has a ragged row");
        }
        RegimeSegment seg;
        seg.label = regime_from_string(row[0]);
        seg.start = Date::parse(row[1]);
        seg.end = Date::parse(row[2]);
        seg.length = static_cast<std::size_t>(std::stoul(row[3]));
        segments.push_back(seg);
    }
    return segments;
}

}  // namespace regimekit::regimes
