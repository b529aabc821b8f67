#include "regimekit/strategy/engine.h"

#include <algorithm>
#include <limits>
#include <optional>

#include "regimekit/common/error.h"
#include "regimekit/signal/crossings.h"

namespace regimekit::strategy {

namespace {

using indicators::IndicatorSeries;

// +1 / -1 where a strict crossing happens, 0 elsewhere.
std::vector<std::int8_t> cross_marks(const IndicatorSeries& a, const IndicatorSeries& b) {
    std::vector<std::int8_t> marks(a.size(), 0);
    for (const auto& event : signal::detect_crossings(a, b, "")) {
        marks[event.index] = event.kind == signal::CrossKind::CrossAbove ? 1 : -1;
    }
    return marks;
}

struct CompiledRule {
    std::string label;
    std::int8_t wanted = 0;
    std::vector<std::int8_t> marks;

    bool fires(std::size_t t) const { return marks[t] == wanted; }
};

struct CompiledSpec {
    int direction = 0;  // +1 / -1
    std::string enter_action;
    std::vector<CompiledRule> entries;
    std::vector<CompiledRule> exits;  // includes take-profit and stop-loss
};

const indicators::Band& bollinger_for(const IndicatorBundle& bundle, const StrategySpec& spec,
                                      double k) {
    auto it = bundle.bollinger.find({spec.bollinger_n, k});
    if (it == bundle.bollinger.end()) {
        fail("MissingIndicator", "bundle lacks bollinger(" + std::to_string(spec.bollinger_n) +
                                     ", " + std::to_string(k) + ")");
    }
    return it->second;
}

template <typename Map, typename Key>
const auto& find_or_fail(const Map& map, const Key& key, const std::string& what) {
    auto it = map.find(key);
    if (it == map.end()) {
        fail("MissingIndicator", "bundle lacks " + what);
    }
    return it->second;
}

CompiledRule compile_rule(const CrossRule& rule, const StrategySpec& spec,
                          const IndicatorBundle& bundle) {
    CompiledRule compiled;
    compiled.label = rule.label();
    compiled.wanted = rule.dir == CrossDir::Above ? 1 : -1;
    switch (rule.subject) {
        case RuleSubject::BollingerLower:
            compiled.marks = cross_marks(bundle.close, bollinger_for(bundle, spec, rule.param).lower);
            break;
        case RuleSubject::BollingerUpper:
            compiled.marks = cross_marks(bundle.close, bollinger_for(bundle, spec, rule.param).upper);
            break;
        case RuleSubject::Rsi: {
            const auto& series = find_or_fail(bundle.rsi, spec.rsi_n, "rsi");
            compiled.marks = cross_marks(series, indicators::constant_series(series, rule.param));
            break;
        }
        case RuleSubject::Ema:
            compiled.marks = cross_marks(bundle.close, find_or_fail(bundle.ema, spec.ema_n, "ema"));
            break;
        case RuleSubject::Fib:
            compiled.marks = cross_marks(
                bundle.close,
                find_or_fail(bundle.fib, std::make_pair(spec.swing_lookback, rule.param), "fib"));
            break;
    }
    return compiled;
}

// Take-profit / stop-loss level EMA + mult * ATR as a crossing rule; the
// level sits above the EMA for positive multiples, so the relevant crossing
// direction follows the sign.
CompiledRule compile_level_rule(const std::string& label, double mult, const StrategySpec& spec,
                                const IndicatorBundle& bundle) {
    const auto& ema_series = find_or_fail(bundle.ema, spec.ema_n, "ema");
    const auto& atr_series = find_or_fail(bundle.atr, spec.atr_n, "atr");
    IndicatorSeries level;
    level.dates = ema_series.dates;
    level.warmup = std::max(ema_series.warmup, atr_series.warmup);
    level.values.assign(ema_series.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t t = level.warmup; t < level.size(); ++t) {
        level.values[t] = ema_series.values[t] + mult * atr_series.values[t];
    }
    CompiledRule compiled;
    compiled.label = label;
    compiled.wanted = mult > 0.0 ? 1 : -1;
    compiled.marks = cross_marks(bundle.close, level);
    return compiled;
}

CompiledSpec compile_spec(const StrategySpec& spec, const IndicatorBundle& bundle) {
    spec.validate();
    CompiledSpec compiled;
    compiled.direction = spec.direction == Direction::LongOnly ? 1 : -1;
    compiled.enter_action = spec.direction == Direction::LongOnly ? "enter_long" : "enter_short";
    for (const auto& rule : spec.entries) {
        compiled.entries.push_back(compile_rule(rule, spec, bundle));
    }
    for (const auto& rule : spec.exits) {
        compiled.exits.push_back(compile_rule(rule, spec, bundle));
    }
    compiled.exits.push_back(compile_level_rule("take_profit", spec.take_profit_mult, spec, bundle));
    compiled.exits.push_back(compile_level_rule("stop_loss", spec.stop_loss_mult, spec, bundle));
    return compiled;
}

// One bar of the shared strategy state machine. Returns the fired rule, if
// any, after applying exit-beats-entry precedence.
std::optional<const CompiledRule*> step(const CompiledSpec& spec, int& state, std::size_t t) {
    if (state != 0) {
        for (const auto& rule : spec.exits) {
            if (rule.fires(t)) {
                state = 0;
                return &rule;
            }
        }
        return std::nullopt;
    }
    for (const auto& rule : spec.entries) {
        if (rule.fires(t)) {
            state = spec.direction;
            return &rule;
        }
    }
    return std::nullopt;
}

}  // namespace

IndicatorBundle build_bundle(const data::PriceSeries& p,
                             const std::vector<StrategySpec>& specs) {
    p.validate();
    IndicatorBundle bundle;
    bundle.close = indicators::close_series(p);
    bundle.dates = bundle.close.dates;

    for (const auto& spec : specs) {
        for (const auto* rules : {&spec.entries, &spec.exits}) {
            for (const auto& rule : *rules) {
                switch (rule.subject) {
                    case RuleSubject::BollingerLower:
                    case RuleSubject::BollingerUpper: {
                        auto key = std::make_pair(spec.bollinger_n, rule.param);
                        if (!bundle.bollinger.count(key)) {
                            bundle.bollinger.emplace(
                                key, indicators::bollinger(bundle.close, spec.bollinger_n,
                                                           rule.param));
                        }
                        break;
                    }
                    case RuleSubject::Rsi:
                        if (!bundle.rsi.count(spec.rsi_n)) {
                            bundle.rsi.emplace(spec.rsi_n,
                                               indicators::rsi(bundle.close, spec.rsi_n));
                        }
                        break;
                    case RuleSubject::Ema:
                        break;  // always built below for the TP/SL levels
                    case RuleSubject::Fib: {
                        auto key = std::make_pair(spec.swing_lookback, rule.param);
                        if (!bundle.fib.count(key)) {
                            auto swings =
                                indicators::swing_extremes(bundle.close, spec.swing_lookback);
                            bundle.fib.emplace(key, indicators::fib_series(swings, rule.param));
                        }
                        break;
                    }
                }
            }
        }
        if (!bundle.ema.count(spec.ema_n)) {
            bundle.ema.emplace(spec.ema_n, indicators::ema(bundle.close, spec.ema_n));
        }
        if (!bundle.atr.count(spec.atr_n)) {
            bundle.atr.emplace(spec.atr_n, indicators::atr(p, spec.atr_n));
        }
    }
    return bundle;
}

EvalResult evaluate(const StrategySpec& spec, const IndicatorBundle& bundle) {
    CompiledSpec compiled = compile_spec(spec, bundle);
    const std::size_t T = bundle.dates.size();

    EvalResult result;
    result.positions.dates = bundle.dates;
    result.positions.position.assign(T, 0);

    int state = 0;
    for (std::size_t t = 0; t < T; ++t) {
        int before = state;
        auto fired = step(compiled, state, t);
        if (fired.has_value()) {
            result.log.push_back({bundle.dates[t], (*fired)->label,
                                  before == 0 ? compiled.enter_action : "exit"});
        }
        result.positions.position[t] = state;
    }
    return result;
}

AdaptiveResult adaptive(const regimes::RegimeSeries& labels, const AdaptiveConfig& cfg,
                        const IndicatorBundle& bundle,
                        const std::vector<StrategySpec>& specs) {
    cfg.validate();
    std::map<regimes::RegimeLabel, CompiledSpec> compiled;
    for (const auto& spec : specs) {
        compiled.emplace(spec.regime, compile_spec(spec, bundle));
    }

    const std::size_t T = bundle.dates.size();
    AdaptiveResult result;
    result.positions.dates = bundle.dates;
    result.positions.position.assign(T, 0);

    struct Pending {
        regimes::RegimeLabel target;
        double anchor_close;
        Date change_date;
    };

    std::optional<regimes::RegimeLabel> active;
    std::optional<Pending> pending;
    int state = 0;

    auto is_bullish = [](regimes::RegimeLabel label) {
        return label == regimes::RegimeLabel::Advance ||
               label == regimes::RegimeLabel::Accumulation;
    };

    for (std::size_t t = 0; t < T; ++t) {
        auto label_idx = labels.index_of(bundle.dates[t]);
        if (!label_idx.has_value()) {
            result.positions.position[t] = state;
            continue;
        }
        regimes::RegimeLabel label = labels.regime[*label_idx];
        double close = bundle.close.values[t];

        if (!active.has_value()) {
            active = label;
        }
        if (label != *active) {
            if (!pending.has_value() || pending->target != label) {
                pending = Pending{label, close, bundle.dates[t]};
            }
        } else {
            pending.reset();  // label returned before the move confirmed
        }

        if (pending.has_value()) {
            bool confirmed = is_bullish(pending->target)
                                 ? close >= pending->anchor_close * (1.0 + cfg.bullish_confirm)
                                 : close <= pending->anchor_close * (1.0 - cfg.bearish_confirm);
            if (confirmed) {
                if (state != 0) {
                    state = 0;
                    result.log.push_back({bundle.dates[t], "regime_switch", "exit"});
                }
                result.switches.push_back(
                    {pending->change_date, *active, pending->target, bundle.dates[t]});
                active = pending->target;
                pending.reset();
                result.positions.position[t] = 0;
                continue;  // the incoming spec starts flat next bar
            }
        }

        auto it = compiled.find(*active);
        if (it == compiled.end()) {
            fail("MissingIndicator", "no strategy spec for regime " + regimes::to_string(*active));
        }
        int before = state;
        auto fired = step(it->second, state, t);
        if (fired.has_value()) {
            result.log.push_back({bundle.dates[t], (*fired)->label,
                                  before == 0 ? it->second.enter_action : "exit"});
        }
        result.positions.position[t] = state;
    }
    return result;
}

PositionSeries restrict_positions(const PositionSeries& positions,
                                  const regimes::RegimeSeries& labels,
                                  regimes::RegimeLabel regime) {
    PositionSeries out = positions;
    for (std::size_t t = 0; t < out.size(); ++t) {
        auto idx = labels.index_of(out.dates[t]);
        if (!idx.has_value() || labels.regime[*idx] != regime) {
            out.position[t] = 0;
        }
    }
    return out;
}

}  // namespace regimekit::strategy
