#include "regimekit/stats/performance.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "regimekit/common/error.h"

namespace regimekit::stats {

namespace {

constexpr double kTradingDays = 252.0;

std::vector<double> equity_returns(const std::vector<double>& equity) {
    std::vector<double> returns;
    if (equity.size() < 2) {
        return returns;
    }
    returns.reserve(equity.size() - 1);
    for (std::size_t t = 1; t < equity.size(); ++t) {
        returns.push_back(equity[t] / equity[t - 1] - 1.0);
    }
    return returns;
}

}  // namespace

double cagr(const std::vector<double>& equity) {
    if (equity.size() < 2) {
        fail("SeriesTooShort", "cagr needs at least 2 equity points");
    }
    for (double value : equity) {
        if (!(value > 0.0)) {
            fail("NonPositiveEquity", "cagr needs a positive equity curve");
        }
    }
    double n = static_cast<double>(equity.size() - 1);
    return (std::pow(equity.back() / equity.front(), kTradingDays / n) - 1.0) * 100.0;
}

double ann_risk(const std::vector<double>& equity) {
    if (equity.size() < 3) {
        fail("SeriesTooShort", "ann_risk needs at least 3 equity points");
    }
    std::vector<double> returns = equity_returns(equity);
    double mean = 0.0;
    for (double r : returns) {
        mean += r;
    }
    mean /= static_cast<double>(returns.size());
    double acc = 0.0;
    for (double r : returns) {
        acc += (r - mean) * (r - mean);
    }
    double sd = std::sqrt(acc / static_cast<double>(returns.size() - 1));
    return sd * std::sqrt(kTradingDays) * 100.0;
}

double sharpe(double cagr_pct, double ann_risk_pct) {
    if (!(ann_risk_pct > 0.0)) {
        fail("ZeroRisk", "annualized risk must be positive");
    }
    return 100.0 * cagr_pct / ann_risk_pct;
}

TradeStats trade_stats(const std::vector<backtest::Trade>& trades) {
    TradeStats stats;
    stats.num_trades = trades.size();
    if (trades.empty()) {
        return stats;
    }
    std::size_t winners = 0;
    std::size_t run = 0;
    for (const auto& trade : trades) {
        if (trade.net > 0.0) {
            ++winners;
            run = 0;
        } else {
            // Zero-P&L trades count as losses.
            ++run;
            stats.max_consec_losers = std::max(stats.max_consec_losers, run);
        }
    }
    std::size_t losers = trades.size() - winners;
    stats.win_pct = 100.0 * static_cast<double>(winners) / static_cast<double>(trades.size());
    if (losers > 0) {
        stats.win_loss_ratio_pct =
            100.0 * static_cast<double>(winners) / static_cast<double>(losers);
    }
    return stats;
}

double max_drawdown(const std::vector<double>& equity) {
    if (equity.empty()) {
        fail("SeriesTooShort", "max_drawdown needs a non-empty equity curve");
    }
    double peak = equity.front();
    double worst = 0.0;
    for (double value : equity) {
        peak = std::max(peak, value);
        worst = std::min(worst, value / peak - 1.0);
    }
    return worst * 100.0;
}

double lake_ratio(const std::vector<double>& equity) {
    if (equity.empty()) {
        fail("SeriesTooShort", "lake_ratio needs a non-empty equity curve");
    }
    double peak = equity.front();
    double water = 0.0;
    double earth = 0.0;
    for (double value : equity) {
        if (!(value > 0.0)) {
            fail("NonPositiveEquity", "lake_ratio needs a positive equity curve");
        }
        peak = std::max(peak, value);
        water += peak - value;
        earth += value;
    }
    return 100.0 * water / earth;
}

std::optional<double> gain_to_pain(const std::vector<backtest::Trade>& trades) {
    double gains = 0.0;
    double pains = 0.0;
    for (const auto& trade : trades) {
        if (trade.net > 0.0) {
            gains += trade.net;
        } else {
            pains += -trade.net;
        }
    }
    if (pains == 0.0) {
        return std::nullopt;
    }
    return 100.0 * gains / pains;
}

DailyPlStats daily_pl_stats(const backtest::BacktestResult& result) {
    DailyPlStats stats;
    const auto& equity = result.equity;
    if (equity.size() < 2) {
        return stats;
    }
    double n = static_cast<double>(equity.size() - 1);
    stats.avg_daily_pl = (equity.back() - equity.front()) / n;
    double sum = 0.0;
    for (double r : equity_returns(equity)) {
        sum += r;
    }
    stats.daily_return_bps = 10000.0 * sum / n;
    return stats;
}

PerfReport compute_report(const backtest::BacktestResult& result) {
    PerfReport report;
    report.cagr_pct = cagr(result.equity);
    report.ann_risk_pct = ann_risk(result.equity);
    if (report.ann_risk_pct > 0.0) {
        report.sharpe_pct = sharpe(report.cagr_pct, report.ann_risk_pct);
    }
    TradeStats trades = trade_stats(result.trades);
    report.win_pct = trades.win_pct;
    report.num_trades = trades.num_trades;
    report.win_loss_ratio_pct = trades.win_loss_ratio_pct;
    report.max_consec_losers = trades.max_consec_losers;
    DailyPlStats daily = daily_pl_stats(result);
    report.avg_daily_pl = daily.avg_daily_pl;
    report.daily_return_bps = daily.daily_return_bps;
    report.max_drawdown_pct = max_drawdown(result.equity);
    report.lake_ratio = lake_ratio(result.equity);
    report.gain_to_pain_ratio = gain_to_pain(result.trades);
    return report;
}

std::string PerfReport::to_json() const {
    nlohmann::json j;
    j["cagr_pct"] = cagr_pct;
    j["ann_risk_pct"] = ann_risk_pct;
    j["sharpe_pct"] = sharpe_pct.has_value() ? nlohmann::json(*sharpe_pct) : nlohmann::json();
    j["win_pct"] = win_pct;
    j["num_trades"] = num_trades;
    j["win_loss_ratio_pct"] =
        win_loss_ratio_pct.has_value() ? nlohmann::json(*win_loss_ratio_pct) : nlohmann::json();
    j["avg_daily_pl"] = avg_daily_pl;
    j["daily_return_bps"] = daily_return_bps;
    j["max_consec_losers"] = max_consec_losers;
    j["max_drawdown_pct"] = max_drawdown_pct;
    j["lake_ratio"] = lake_ratio;
    j["gain_to_pain_ratio"] =
        gain_to_pain_ratio.has_value() ? nlohmann::json(*gain_to_pain_ratio) : nlohmann::json();
    return j.dump(2) + "\n";
}

void write_report_json(const std::string& path, const PerfReport& report) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << report.to_json();
}

}  // namespace regimekit::stats
