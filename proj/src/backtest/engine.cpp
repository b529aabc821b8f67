#include "regimekit/backtest/engine.h"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"

namespace regimekit::backtest {

void CostModel::validate() const {
    if (transaction_bps < 0.0 || slippage_bps < 0.0 || commission_bps < 0.0) {
        fail("InvalidCostModel", "cost basis points must be non-negative");
    }
}

namespace {

struct OpenPosition {
    int direction = 0;
    double quantity = 0.0;
    double entry_exec = 0.0;
    double entry_fee = 0.0;
    Date entry_date;
};

}  // namespace

BacktestResult run(const data::PriceSeries& p, const strategy::PositionSeries& target,
                   double capital, const CostModel& costs) {
    p.validate();
    costs.validate();
    if (!(capital > 0.0)) {
        fail("InvalidArgument", "capital must be positive");
    }
    if (target.size() != p.size() ||
        !std::equal(target.dates.begin(), target.dates.end(), p.bars.begin(),
                    [](const Date& d, const data::Bar& b) { return d == b.date; })) {
        fail("LengthMismatch", "target positions must align with the price series");
    }

    const double slip = costs.slippage_bps * 1e-4;
    const double fee_rate = (costs.transaction_bps + costs.commission_bps) * 1e-4;
    const std::size_t T = p.size();

    BacktestResult result;
    result.initial_capital = capital;
    result.dates.reserve(T);
    result.equity.reserve(T);
    result.daily_pl.reserve(T);
    result.position.reserve(T);

    double cash = capital;
    OpenPosition open;
    double prev_equity = capital;

    auto close_position = [&](std::size_t t) {
        double close = p.bars[t].close;
        double exec = close * (open.direction > 0 ? 1.0 - slip : 1.0 + slip);
        double notional = open.quantity * exec;
        double fee = fee_rate * notional;
        if (open.direction > 0) {
            cash += notional - fee;
        } else {
            cash -= notional + fee;
        }
        Trade trade;
        trade.entry_date = open.entry_date;
        trade.exit_date = p.bars[t].date;
        trade.direction = open.direction;
        trade.entry_price = open.entry_exec;
        trade.exit_price = exec;
        trade.quantity = open.quantity;
        trade.gross = open.direction * open.quantity * (exec - open.entry_exec);
        trade.costs = open.entry_fee + fee;
        trade.net = trade.gross - trade.costs;
        result.trades.push_back(trade);
        open = OpenPosition{};
    };

    for (std::size_t t = 0; t < T; ++t) {
        double close = p.bars[t].close;
        int wanted = target.position[t];

        if (wanted != open.direction) {
            if (open.direction != 0) {
                close_position(t);
            }
            // Entries on the final bar are ignored: the force-close would
            // produce a zero-duration trade.
            if (wanted != 0 && t + 1 < T) {
                double exec = close * (wanted > 0 ? 1.0 + slip : 1.0 - slip);
                double equity_now = cash;
                double quantity = equity_now / exec;
                double notional = quantity * exec;
                double fee = fee_rate * notional;
                if (wanted > 0) {
                    cash -= notional + fee;
                } else {
                    cash += notional - fee;
                }
                open = OpenPosition{wanted, quantity, exec, fee, p.bars[t].date};
            }
        }

        if (open.direction != 0 && t + 1 == T) {
            close_position(t);
        }

        double equity = cash;
        if (open.direction > 0) {
            equity += open.quantity * close;
        } else if (open.direction < 0) {
            equity -= open.quantity * close;
        }
        result.dates.push_back(p.bars[t].date);
        result.equity.push_back(equity);
        result.daily_pl.push_back(equity - prev_equity);
        result.position.push_back(open.direction);
        prev_equity = equity;

        if (equity <= 0.0) {
            if (open.direction != 0) {
                // Mark the blow-up: liquidate and truncate the run here.
                close_position(t);
                result.equity.back() = cash;
                result.daily_pl.back() = cash - (result.equity.size() > 1
                                                     ? result.equity[result.equity.size() - 2]
                                                     : capital);
                result.position.back() = 0;
            }
            result.bankrupt = true;
            break;
        }
    }
    return result;
}

void write_trades_csv(const std::string& path, const BacktestResult& result) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "entry_date,exit_date,direction,entry_px,exit_px,qty,gross,costs,net\n";
    for (const Trade& trade : result.trades) {
        out << trade.entry_date.to_string() << ',' << trade.exit_date.to_string() << ','
            << (trade.direction > 0 ? "long" : "short") << ','
            << csv::format_double(trade.entry_price) << ','
            << csv::format_double(trade.exit_price) << ','
            << csv::format_double(trade.quantity) << ',' << csv::format_double(trade.gross)
            << ',' << csv::format_double(trade.costs) << ',' << csv::format_double(trade.net)
            << '\n';
    }
}

void write_equity_csv(const std::string& path, const BacktestResult& result) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "date,equity,position\n";
    for (std::size_t t = 0; t < result.equity.size(); ++t) {
        out << result.dates[t].to_string() << ',' << csv::format_double(result.equity[t]) << ','
            << result.position[t] << '\n';
    }
}

}  // namespace regimekit::backtest
