#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "regimekit/msar/model.h"

namespace regimekit::cli {

// Everything the pipeline commands need; validated before any file is
// touched.
struct RunConfig {
    std::string input;                                         // price CSV
    std::vector<std::pair<std::string, std::string>> assets;   // name -> path
    std::map<std::string, std::string> columns;                // header overrides
    std::string date_format = "%Y-%m-%d";
    msar::ProbMode mode = msar::ProbMode::Smoothed;
    std::size_t tma_n = 250;
    std::size_t atr_n = 20;
    double keltner_mult = 1.0;
    double capital = 1'000'000.0;
    double cost_bps = 1.0;
    double slippage_bps = 1.0;
    double commission_bps = 1.0;
    std::string strategy = "adaptive";
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    double threshold = 0.5;
    std::string scope = "regime";  // "regime" (Tables 6-9 style) or "full"
    std::size_t horizon = 30;
    int restarts = 5;
    int max_iter = 1000;
    double tol = 1e-8;

    void validate() const;
};

// Each command writes its artifacts under out_dir and throws regimekit::Error
// on failure; the CLI front end turns that into exit code 1 plus a
// diagnostic naming the failing stage.

// model.json + probs.csv (probabilities in the configured mode).
void cmd_fit(const RunConfig& config);

// regimes.csv + segments.csv from probs.csv and the prices.
void cmd_label(const RunConfig& config);

// trades.csv + equity.csv + stats.json + signal_log.csv for the selected
// strategy.
void cmd_backtest(const RunConfig& config);

// signals.csv: regime-conditioned forward paths after indicator crossings.
void cmd_signals(const RunConfig& config);

// asset_means.csv + corr_<regime>.csv from the --asset series.
void cmd_assets(const RunConfig& config);

// equity_regimes.svg + probabilities.svg from prior outputs.
void cmd_report(const RunConfig& config);

}  // namespace regimekit::cli
