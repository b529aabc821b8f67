#pragma once

#include <string>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/strategy/engine.h"

namespace regimekit::backtest {

// Basis points charged per trade leg: slippage moves the execution price
// against the trader; transaction and commission are deducted from cash on
// the traded notional.
struct CostModel {
    double transaction_bps = 1.0;
    double slippage_bps = 1.0;
    double commission_bps = 1.0;

    void validate() const;
};

struct Trade {
    Date entry_date;
    Date exit_date;
    int direction = 0;  // +1 long, -1 short
    double entry_price = 0.0;  // execution price, slippage included
    double exit_price = 0.0;
    double quantity = 0.0;
    double gross = 0.0;
    double costs = 0.0;
    double net = 0.0;  // gross - costs
};

struct BacktestResult {
    std::vector<Trade> trades;
    std::vector<Date> dates;
    std::vector<double> equity;    // marked at each close; starts at capital
    std::vector<double> daily_pl;  // equity_t - equity_{t-1} (day 0 vs capital)
    std::vector<int> position;     // held exposure after the bar's executions
    double initial_capital = 0.0;
    bool bankrupt = false;

    double final_equity() const { return equity.empty() ? initial_capital : equity.back(); }
};

// Close-price backtest of a target-position series. Position changes execute
// at the signal bar's close, adjusted adversely by slippage; entries size
// the full current equity (fractional quantities). Longs mark to market on
// close-to-close changes, shorts on the negative. A position still open at
// the last bar is force-closed there; entries on the last bar are ignored
// (they could never be marked). Equity <= 0 halts the run and flags the
// result bankrupt.
BacktestResult run(const data::PriceSeries& p, const strategy::PositionSeries& target,
                   double capital, const CostModel& costs);

// CSV writers for the staged pipeline.
void write_trades_csv(const std::string& path, const BacktestResult& result);
void write_equity_csv(const std::string& path, const BacktestResult& result);

}  // namespace regimekit::backtest
