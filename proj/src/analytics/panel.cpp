#include "regimekit/analytics/panel.h"

#include <cmath>
#include <limits>
#include <map>

#include "regimekit/common/error.h"

namespace regimekit::analytics {

using regimes::kAllRegimes;

namespace {

int regime_slot(regimes::RegimeLabel label) {
    for (std::size_t i = 0; i < kAllRegimes.size(); ++i) {
        if (kAllRegimes[i] == label) {
            return static_cast<int>(i);
        }
    }
    return 0;
}

// date -> return lookup for one asset.
std::map<std::int32_t, double> as_map(const data::ReturnSeries& asset) {
    std::map<std::int32_t, double> out;
    for (std::size_t i = 0; i < asset.size(); ++i) {
        out.emplace(asset.dates[i].days(), asset.values[i]);
    }
    return out;
}

}  // namespace

std::vector<RegimeMeansRow> regime_means(const RegimePanel& panel) {
    if (panel.assets.empty()) {
        fail("InvalidArgument", "panel has no assets");
    }
    std::vector<RegimeMeansRow> rows;
    for (const auto& asset : panel.assets) {
        RegimeMeansRow row;
        row.asset = asset.symbol;
        std::array<double, 4> sums{};
        for (std::size_t i = 0; i < asset.size(); ++i) {
            auto idx = panel.labels.index_of(asset.dates[i]);
            if (!idx.has_value()) {
                continue;
            }
            int slot = regime_slot(panel.labels.regime[*idx]);
            sums[slot] += asset.values[i];
            row.day_count[slot] += 1;
        }
        for (int slot = 0; slot < 4; ++slot) {
            if (row.day_count[slot] > 0) {
                row.mean_daily_return[slot] =
                    sums[slot] / static_cast<double>(row.day_count[slot]);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RegimeCorrelation> regime_correlations(const RegimePanel& panel) {
    if (panel.assets.empty()) {
        fail("InvalidArgument", "panel has no assets");
    }
    std::vector<std::map<std::int32_t, double>> maps;
    maps.reserve(panel.assets.size());
    for (const auto& asset : panel.assets) {
        maps.push_back(as_map(asset));
    }

    std::vector<RegimeCorrelation> out;
    for (regimes::RegimeLabel regime : kAllRegimes) {
        std::vector<std::int32_t> regime_dates;
        for (std::size_t t = 0; t < panel.labels.size(); ++t) {
            if (panel.labels.regime[t] == regime) {
                regime_dates.push_back(panel.labels.dates[t].days());
            }
        }
        if (regime_dates.size() < 3) {
            continue;  // InsufficientData: matrix omitted for this regime
        }

        const std::size_t n = panel.assets.size();
        RegimeCorrelation corr;
        corr.regime = regime;
        for (const auto& asset : panel.assets) {
            corr.assets.push_back(asset.symbol);
        }
        corr.matrix.assign(n, std::vector<double>(n, 0.0));

        for (std::size_t a = 0; a < n; ++a) {
            corr.matrix[a][a] = 1.0;
            for (std::size_t b = a + 1; b < n; ++b) {
                // Pairwise-complete: only dates both assets cover.
                double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
                std::size_t count = 0;
                for (std::int32_t day : regime_dates) {
                    auto ita = maps[a].find(day);
                    auto itb = maps[b].find(day);
                    if (ita == maps[a].end() || itb == maps[b].end()) {
                        continue;
                    }
                    double x = ita->second;
                    double y = itb->second;
                    sx += x;
                    sy += y;
                    sxx += x * x;
                    syy += y * y;
                    sxy += x * y;
                    ++count;
                }
                double value = std::numeric_limits<double>::quiet_NaN();
                if (count >= 3) {
                    double cn = static_cast<double>(count);
                    double cov = sxy - sx * sy / cn;
                    double vx = sxx - sx * sx / cn;
                    double vy = syy - sy * sy / cn;
                    if (vx > 0.0 && vy > 0.0) {
                        value = cov / std::sqrt(vx * vy);
                    }
                }
                corr.matrix[a][b] = value;
                corr.matrix[b][a] = value;
            }
        }
        out.push_back(std::move(corr));
    }
    if (out.empty()) {
        fail("InsufficientData", "no regime has 3 or more labeled days");
    }
    return out;
}

}  // namespace regimekit::analytics
