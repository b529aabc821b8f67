#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regimekit/cli/commands.h"
#include "regimekit/common/error.h"

namespace {

using regimekit::cli::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--input", config.input, "Price CSV (date,open,high,low,close)");
    cmd->add_option("--column", [&config](const std::vector<std::string>& values) {
        for (const auto& value : values) {
            auto eq = value.find('=');
            if (eq == std::string::npos) {
                return false;
            }
            config.columns[value.substr(0, eq)] = value.substr(eq + 1);
        }
        return true;
    }, "Column override, e.g. --column close=Adj_Close (repeatable)");
    cmd->add_option("--date-format", config.date_format, "Date format (%Y-%m-%d default)");
    cmd->add_option("--out-dir", config.out_dir, "Directory for pipeline artifacts");
    cmd->add_option("--seed", config.seed, "RNG seed for deterministic runs");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regimekit: regime-switching market model, tailored strategies and backtests"};
    app.require_subcommand(1);

    RunConfig config;
    std::string mode = "smoothed";
    std::vector<std::string> asset_args;

    auto* fit = app.add_subcommand("fit", "Fit the two-regime variance model; writes model.json + probs.csv");
    add_common_flags(fit, config);
    fit->add_option("--mode", mode, "Probability mode: smoothed|filtered")
        ->check(CLI::IsMember({"smoothed", "filtered"}));
    fit->add_option("--restarts", config.restarts, "EM restarts");
    fit->add_option("--max-iter", config.max_iter, "EM iteration cap");
    fit->add_option("--tol", config.tol, "EM convergence tolerance");

    auto* label = app.add_subcommand("label", "Combine variance and trend labels; writes regimes.csv + segments.csv");
    add_common_flags(label, config);
    label->add_option("--tma", config.tma_n, "Triangular moving average period");
    label->add_option("--atr", config.atr_n, "ATR window");
    label->add_option("--keltner-mult", config.keltner_mult, "Hysteresis band in ATR multiples");
    label->add_option("--threshold", config.threshold, "High-variance probability threshold");

    auto* backtest = app.add_subcommand("backtest", "Run a strategy; writes trades.csv + equity.csv + stats.json");
    add_common_flags(backtest, config);
    backtest->add_option("--strategy", config.strategy,
                         "advance|accumulation|decline|distribution|adaptive");
    backtest->add_option("--capital", config.capital, "Initial capital");
    backtest->add_option("--cost-bps", config.cost_bps, "Transaction cost per leg (bps)");
    backtest->add_option("--slippage-bps", config.slippage_bps, "Slippage per leg (bps)");
    backtest->add_option("--commission-bps", config.commission_bps, "Commission per leg (bps)");
    backtest->add_option("--scope", config.scope,
                         "regime: positions only inside the strategy's regime; full: everywhere")
        ->check(CLI::IsMember({"regime", "full"}));

    auto* signals = app.add_subcommand("signals", "Forward-path analysis of indicator crossings; writes signals.csv");
    add_common_flags(signals, config);
    signals->add_option("--horizon", config.horizon, "Forward path horizon (days)");

    auto* assets = app.add_subcommand("assets", "Per-regime asset means and correlations");
    add_common_flags(assets, config);
    assets->add_option("--asset", asset_args, "Asset series as name=path (repeatable)");

    auto* report = app.add_subcommand("report", "SVG report from prior outputs");
    add_common_flags(report, config);

    CLI11_PARSE(app, argc, argv);

    config.mode = mode == "filtered" ? regimekit::msar::ProbMode::Filtered
                                     : regimekit::msar::ProbMode::Smoothed;
    for (const auto& arg : asset_args) {
        auto eq = arg.find('=');
        if (eq == std::string::npos) {
            std::cerr << "assets: --asset expects name=path, got '" << arg << "'\n";
            return 1;
        }
        config.assets.emplace_back(arg.substr(0, eq), arg.substr(eq + 1));
    }

    struct Dispatch {
        CLI::App* cmd;
        const char* name;
        std::function<void(const RunConfig&)> run;
    };
    const Dispatch table[] = {
        {fit, "fit", regimekit::cli::cmd_fit},
        {label, "label", regimekit::cli::cmd_label},
        {backtest, "backtest", regimekit::cli::cmd_backtest},
        {signals, "signals", regimekit::cli::cmd_signals},
        {assets, "assets", regimekit::cli::cmd_assets},
        {report, "report", regimekit::cli::cmd_report},
    };
    for (const auto& entry : table) {
        if (entry.cmd->parsed()) {
            try {
                entry.run(config);
            } catch (const regimekit::Error& e) {
                std::cerr << entry.name << ": " << e.what() << "\n";
                return 1;
            } catch (const std::exception& e) {
                std::cerr << entry.name << ": " << e.what() << "\n";
                return 1;
            }
            return 0;
        }
    }
    std::cerr << "no subcommand given\n";
    return 1;
}
