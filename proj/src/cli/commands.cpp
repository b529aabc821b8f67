#include "regimekit/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "regimekit/analytics/panel.h"
#include "regimekit/backtest/engine.h"
#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"
#include "regimekit/common/log.h"
#include "regimekit/data/csv_io.h"
#include "regimekit/indicators/indicators.h"
#include "regimekit/msar/em.h"
#include "regimekit/msar/io.h"
#include "regimekit/regimes/io.h"
#include "regimekit/report/svg.h"
#include "regimekit/signal/crossings.h"
#include "regimekit/stats/performance.h"
#include "regimekit/strategy/engine.h"

namespace regimekit::cli {

namespace fs = std::filesystem;

namespace {

void check_windows(const RunConfig& c) {
    if (c.tma_n < 2 || c.atr_n < 1 || c.horizon < 1) {
        fail("InvalidConfig", "windows must be >= 1 (tma >= 2)");
    }
}

data::ColumnMap column_map(const RunConfig& config) {
    data::ColumnMap map;
    map.date_format = config.date_format;
    for (const auto& [key, value] : config.columns) {
        if (key == "date") {
            map.date = value;
        } else if (key == "open") {
            map.open = value;
        } else if (key == "high") {
            map.high = value;
        } else if (key == "low") {
            map.low = value;
        } else if (key == "close") {
            map.close = value;
        } else {
            fail("InvalidConfig", "unknown column override '" + key + "'");
        }
    }
    return map;
}

std::string out_path(const RunConfig& config, const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
}

void ensure_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
        fail("InvalidConfig", "cannot create out dir '" + config.out_dir + "'");
    }
}

data::PriceSeries load_prices(const RunConfig& config) {
    if (config.input.empty()) {
        fail("InvalidConfig", "--input is required");
    }
    return data::parse_price_csv(config.input, column_map(config));
}

// Variance labels live on return dates, trend labels on price dates; the
// combined regime series covers their intersection.
regimes::RegimeSeries build_regimes(const data::PriceSeries& prices,
                                    const msar::ProbSeries& probs, const RunConfig& config) {
    regimes::TrendSeries trend =
        regimes::trend_regime(prices, config.tma_n, config.atr_n, config.keltner_mult);

    std::map<std::int32_t, msar::VarianceLabel> variance_by_date;
    const std::size_t high = probs.probs.empty() ? 0 : probs.probs.front().size() - 1;
    for (std::size_t t = 0; t < probs.dates.size(); ++t) {
        variance_by_date.emplace(probs.dates[t].days(),
                                 probs.probs[t][high] > config.threshold
                                     ? msar::VarianceLabel::High
                                     : msar::VarianceLabel::Low);
    }

    regimes::TrendSeries trend_common;
    msar::VarianceSeries variance_common;
    for (std::size_t t = 0; t < trend.dates.size(); ++t) {
        auto it = variance_by_date.find(trend.dates[t].days());
        if (it == variance_by_date.end()) {
            continue;
        }
        trend_common.dates.push_back(trend.dates[t]);
        trend_common.labels.push_back(trend.labels[t]);
        variance_common.dates.push_back(trend.dates[t]);
        variance_common.labels.push_back(it->second);
    }
    if (trend_common.dates.empty()) {
        fail("EmptyIntersection", "trend and variance labels share no dates");
    }
    return regimes::combine(trend_common, variance_common);
}

void write_signal_log_csv(const std::string& path,
                          const std::vector<strategy::SignalEvent>& log) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << "date,rule,action\n";
    for (const auto& event : log) {
        out << event.date.to_string() << ',' << event.rule << ',' << event.action << '\n';
    }
}

}  // namespace

void RunConfig::validate() const {
    check_windows(*this);
    if (!(capital > 0.0)) {
        fail("InvalidConfig", "capital must be positive");
    }
    if (cost_bps < 0.0 || slippage_bps < 0.0 || commission_bps < 0.0) {
        fail("InvalidConfig", "cost basis points must be non-negative");
    }
    if (!(threshold > 0.0 && threshold < 1.0)) {
        fail("InvalidConfig", "threshold must lie in (0,1)");
    }
    static const std::set<std::string> selectors = {"advance", "accumulation", "decline",
                                                    "distribution", "adaptive"};
    if (!selectors.count(strategy)) {
        fail("InvalidConfig", "unknown strategy '" + strategy +
                                  "' (expected advance|accumulation|decline|distribution|adaptive)");
    }
    if (scope != "regime" && scope != "full") {
        fail("InvalidConfig", "scope must be 'regime' or 'full'");
    }
    if (!(keltner_mult > 0.0)) {
        fail("InvalidConfig", "keltner multiple must be positive");
    }
    if (restarts < 1 || max_iter < 1 || !(tol > 0.0)) {
        fail("InvalidConfig", "restarts/max_iter must be >= 1 and tol positive");
    }
}

void cmd_fit(const RunConfig& config) {
    config.validate();
    data::PriceSeries prices = load_prices(config);
    data::ReturnSeries returns = data::to_returns(prices, data::ReturnKind::Log);

    msar::FitOptions opts;
    opts.max_iter = config.max_iter;
    opts.tol = config.tol;
    opts.n_restarts = config.restarts;
    opts.seed = config.seed;
    log::info("fitting 2-regime variance model on " + std::to_string(returns.size()) +
              " returns");
    msar::FittedModel model = msar::fit_em(returns, 2, opts);
    log::info("loglik " + std::to_string(model.loglik) + " after " +
              std::to_string(model.n_iter) + " iterations");

    ensure_out_dir(config);
    msar::write_model_json(out_path(config, "model.json"), model);
    const auto& probs =
        config.mode == msar::ProbMode::Smoothed ? model.smoothed : model.filtered;
    msar::write_prob_csv(out_path(config, "probs.csv"), returns.dates, probs);
}

void cmd_label(const RunConfig& config) {
    config.validate();
    data::PriceSeries prices = load_prices(config);
    msar::ProbSeries probs = msar::read_prob_csv(out_path(config, "probs.csv"));

    regimes::RegimeSeries series = build_regimes(prices, probs, config);
    regimes::SegmentReport report = regimes::segments(series);

    ensure_out_dir(config);
    regimes::write_regime_csv(out_path(config, "regimes.csv"), series);
    regimes::write_segments_csv(out_path(config, "segments.csv"), report.segments);
    log::info("labeled " + std::to_string(series.size()) + " days in " +
              std::to_string(report.segments.size()) + " segments");
}

void cmd_backtest(const RunConfig& config) {
    config.validate();
    data::PriceSeries prices = load_prices(config);
    regimes::RegimeSeries labels = regimes::read_regime_csv(out_path(config, "regimes.csv"));

    std::vector<strategy::StrategySpec> specs = strategy::builtin_specs();
    strategy::IndicatorBundle bundle = strategy::build_bundle(prices, specs);

    strategy::PositionSeries target;
    std::vector<strategy::SignalEvent> signal_log;
    if (config.strategy == "adaptive") {
        strategy::AdaptiveConfig cfg;
        strategy::AdaptiveResult result = strategy::adaptive(labels, cfg, bundle, specs);
        target = std::move(result.positions);
        signal_log = std::move(result.log);
    } else {
        regimes::RegimeLabel regime = regimes::regime_from_string(config.strategy);
        strategy::EvalResult result = strategy::evaluate(strategy::builtin_spec(regime), bundle);
        signal_log = std::move(result.log);
        target = config.scope == "regime"
                     ? strategy::restrict_positions(result.positions, labels, regime)
                     : std::move(result.positions);
    }

    backtest::CostModel costs{config.cost_bps, config.slippage_bps, config.commission_bps};
    backtest::BacktestResult result = backtest::run(prices, target, config.capital, costs);
    stats::PerfReport report = stats::compute_report(result);

    ensure_out_dir(config);
    backtest::write_trades_csv(out_path(config, "trades.csv"), result);
    backtest::write_equity_csv(out_path(config, "equity.csv"), result);
    stats::write_report_json(out_path(config, "stats.json"), report);
    write_signal_log_csv(out_path(config, "signal_log.csv"), signal_log);
    log::info(config.strategy + ": " + std::to_string(result.trades.size()) +
              " trades, final equity " + std::to_string(result.final_equity()));
}

void cmd_signals(const RunConfig& config) {
    config.validate();
    data::PriceSeries prices = load_prices(config);
    regimes::RegimeSeries labels = regimes::read_regime_csv(out_path(config, "regimes.csv"));
    data::ReturnSeries returns = data::to_returns(prices, data::ReturnKind::Simple);

    indicators::IndicatorSeries close = indicators::close_series(prices);
    indicators::Band boll = indicators::bollinger(close, 20, 1.5);
    indicators::SwingResult swings = indicators::swing_extremes(close, 60);
    indicators::IndicatorSeries fib38 = indicators::fib_series(swings, 0.382);
    indicators::IndicatorSeries fib61 = indicators::fib_series(swings, 0.618);
    indicators::MacdResult macd = indicators::macd(close, 12, 26, 9);
    indicators::IndicatorSeries rsi = indicators::rsi(close, 14);

    std::vector<signal::CrossEvent> events;
    auto collect = [&events](std::vector<signal::CrossEvent> more) {
        events.insert(events.end(), more.begin(), more.end());
    };
    collect(signal::detect_crossings(close, boll.upper, "close_vs_bollinger_upper", &labels));
    collect(signal::detect_crossings(close, boll.lower, "close_vs_bollinger_lower", &labels));
    collect(signal::detect_crossings(close, fib38, "close_vs_fib_0.382", &labels));
    collect(signal::detect_crossings(close, fib61, "close_vs_fib_0.618", &labels));
    collect(signal::detect_crossings(macd.macd_line, macd.signal_line, "macd_vs_signal",
                                     &labels));
    collect(signal::detect_crossings(rsi, 30.0, "rsi_vs_30", &labels));
    collect(signal::detect_crossings(rsi, 60.0, "rsi_vs_60", &labels));
    collect(signal::detect_crossings(rsi, 70.0, "rsi_vs_70", &labels));

    std::vector<signal::ForwardPath> paths =
        signal::forward_paths(events, returns, labels, config.horizon);

    ensure_out_dir(config);
    std::ofstream out(out_path(config, "signals.csv"));
    if (!out) {
        fail("FileNotFound", "cannot write signals.csv");
    }
    out << "subject,kind,regime,offset,mean_cum_return,n_events\n";
    for (const auto& path : paths) {
        for (std::size_t k = 0; k < path.mean_cum_return.size(); ++k) {
            out << path.subject << ',' << signal::to_string(path.kind) << ','
                << regimes::to_string(path.regime) << ',' << k + 1 << ','
                << csv::format_double(path.mean_cum_return[k]) << ',' << path.n_events[k]
                << '\n';
        }
    }
    log::info("signals: " + std::to_string(events.size()) + " events in " +
              std::to_string(paths.size()) + " groups");
}

void cmd_assets(const RunConfig& config) {
    config.validate();
    if (config.assets.empty()) {
        fail("InvalidConfig", "cmd_assets needs at least one --asset name=path");
    }
    regimes::RegimeSeries labels = regimes::read_regime_csv(out_path(config, "regimes.csv"));

    analytics::RegimePanel panel;
    panel.labels = std::move(labels);
    for (const auto& [name, path] : config.assets) {
        data::PriceSeries prices = data::parse_price_csv(path, column_map(config), name);
        panel.assets.push_back(data::to_returns(prices, data::ReturnKind::Simple));
    }

    ensure_out_dir(config);
    {
        std::ofstream out(out_path(config, "asset_means.csv"));
        if (!out) {
            fail("FileNotFound", "cannot write asset_means.csv");
        }
        out << "asset";
        for (auto regime : regimes::kAllRegimes) {
            out << ',' << regimes::to_string(regime);
        }
        out << '\n';
        for (const auto& row : analytics::regime_means(panel)) {
            out << row.asset;
            for (std::size_t slot = 0; slot < 4; ++slot) {
                out << ',';
                if (row.mean_daily_return[slot].has_value()) {
                    out << csv::format_double(*row.mean_daily_return[slot]);
                }
            }
            out << '\n';
        }
    }
    for (const auto& corr : analytics::regime_correlations(panel)) {
        std::string name = "corr_" + regimes::to_string(corr.regime) + ".csv";
        std::ofstream out(out_path(config, name));
        if (!out) {
            fail("FileNotFound", "cannot write " + name);
        }
        out << "asset";
        for (const auto& asset : corr.assets) {
            out << ',' << asset;
        }
        out << '\n';
        for (std::size_t a = 0; a < corr.assets.size(); ++a) {
            out << corr.assets[a];
            for (std::size_t b = 0; b < corr.assets.size(); ++b) {
                out << ',';
                if (!std::isnan(corr.matrix[a][b])) {
                    out << csv::format_double(corr.matrix[a][b]);
                }
            }
            out << '\n';
        }
    }
}

void cmd_report(const RunConfig& config) {
    config.validate();
    csv::Table equity_table = csv::read_table(out_path(config, "equity.csv"));
    std::vector<regimes::RegimeSegment> segs =
        regimes::read_segments_csv(out_path(config, "segments.csv"));
    msar::ProbSeries probs = msar::read_prob_csv(out_path(config, "probs.csv"));

    std::vector<report::EquityPoint> equity;
    for (const auto& row : equity_table.rows) {
        if (row.size() < 2) {
            fail("InvalidEquityCsv", "equity.csv has a ragged row");
        }
        equity.push_back({Date::parse(row[0]), std::stod(row[1])});
    }

    std::vector<report::ProbPoint> prob_points;
    const std::size_t high = probs.probs.empty() ? 0 : probs.probs.front().size() - 1;
    for (std::size_t t = 0; t < probs.dates.size(); ++t) {
        prob_points.push_back({probs.dates[t], probs.probs[t][high]});
    }

    ensure_out_dir(config);
    report::write_file(out_path(config, "equity_regimes.svg"),
                       report::equity_regimes_svg(equity, segs));
    report::write_file(out_path(config, "probabilities.svg"),
                       report::probability_svg(prob_points));
}

}  // namespace regimekit::cli
