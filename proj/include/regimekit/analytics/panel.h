#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/regimes/labels.h"

namespace regimekit::analytics {

// Cross-asset view: regimes always come from the reference index, never from
// the assets themselves.
struct RegimePanel {
    std::vector<data::ReturnSeries> assets;
    regimes::RegimeSeries labels;
};

struct RegimeMeansRow {
    std::string asset;
    // One cell per regime in kAllRegimes order; empty regimes stay absent.
    std::array<std::optional<double>, 4> mean_daily_return;
    std::array<std::size_t, 4> day_count{};
};

std::vector<RegimeMeansRow> regime_means(const RegimePanel& panel);

struct RegimeCorrelation {
    regimes::RegimeLabel regime;
    std::vector<std::string> assets;
    // Symmetric, unit diagonal; pairwise-complete over each pair's shared
    // dates inside the regime. Pairs with under 3 shared days read NaN.
    std::vector<std::vector<double>> matrix;
};

// One matrix per regime that has at least 3 labeled days; thinner regimes
// are skipped.
std::vector<RegimeCorrelation> regime_correlations(const RegimePanel& panel);

}  // namespace regimekit::analytics
