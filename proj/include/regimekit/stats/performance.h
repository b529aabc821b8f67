#pragma once

#include <optional>
#include <string>
#include <vector>

#include "regimekit/backtest/engine.h"

namespace regimekit::stats {

// The twelve-statistic report. Ratios whose denominator is empty (no losing
// trades) are absent rather than infinite.
struct PerfReport {
    double cagr_pct = 0.0;
    double ann_risk_pct = 0.0;
    std::optional<double> sharpe_pct;
    double win_pct = 0.0;
    std::size_t num_trades = 0;
    std::optional<double> win_loss_ratio_pct;
    double avg_daily_pl = 0.0;
    double daily_return_bps = 0.0;
    std::size_t max_consec_losers = 0;
    double max_drawdown_pct = 0.0;
    double lake_ratio = 0.0;
    std::optional<double> gain_to_pain_ratio;

    std::string to_json() const;
};

// ((E_T/E_0)^(252/N) - 1) * 100 with N = trading days elapsed.
double cagr(const std::vector<double>& equity);

// Sample stdev of daily simple equity returns * sqrt(252) * 100.
double ann_risk(const std::vector<double>& equity);

// 100 * cagr_pct / ann_risk_pct; throws ZeroRisk when the risk is zero.
double sharpe(double cagr_pct, double ann_risk_pct);

struct TradeStats {
    double win_pct = 0.0;
    std::size_t num_trades = 0;
    std::optional<double> win_loss_ratio_pct;
    std::size_t max_consec_losers = 0;
};
// Zero-P&L trades count as losses; runs are measured in entry-date order.
TradeStats trade_stats(const std::vector<backtest::Trade>& trades);

// min_t (E_t / max_{s<=t} E_s - 1) * 100; always <= 0.
double max_drawdown(const std::vector<double>& equity);

// 100 * sum(peak - equity) / sum(equity) — water area over earth area.
double lake_ratio(const std::vector<double>& equity);

// 100 * sum(positive net) / |sum(negative net)|; absent with no losers.
std::optional<double> gain_to_pain(const std::vector<backtest::Trade>& trades);

struct DailyPlStats {
    double avg_daily_pl = 0.0;
    double daily_return_bps = 0.0;
};
DailyPlStats daily_pl_stats(const backtest::BacktestResult& result);

PerfReport compute_report(const backtest::BacktestResult& result);

void write_report_json(const std::string& path, const PerfReport& report);

}  // namespace regimekit::stats
