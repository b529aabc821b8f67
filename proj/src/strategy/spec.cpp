#include "regimekit/strategy/spec.h"

#include <json.hpp>

#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"

namespace regimekit::strategy {

using nlohmann::json;
using regimes::RegimeLabel;

namespace {

const char* subject_name(RuleSubject subject) {
    switch (subject) {
        case RuleSubject::BollingerLower: return "bollinger_lower";
        case RuleSubject::BollingerUpper: return "bollinger_upper";
        case RuleSubject::Rsi: return "rsi";
        case RuleSubject::Ema: return "ema";
        case RuleSubject::Fib: return "fib";
    }
    return "?";
}

RuleSubject subject_from_name(const std::string& name) {
    for (RuleSubject s : {RuleSubject::BollingerLower, RuleSubject::BollingerUpper,
                          RuleSubject::Rsi, RuleSubject::Ema, RuleSubject::Fib}) {
        if (name == subject_name(s)) {
            return s;
        }
    }
    fail("InvalidStrategyJson", "unknown rule subject '" + name + "'");
}

json rule_to_json(const CrossRule& rule) {
    return json{{"subject", subject_name(rule.subject)},
                {"dir", rule.dir == CrossDir::Above ? "above" : "below"},
                {"param", rule.param}};
}

CrossRule rule_from_json(const json& j) {
    CrossRule rule;
    rule.subject = subject_from_name(j.at("subject").get<std::string>());
    std::string dir = j.at("dir").get<std::string>();
    if (dir != "above" && dir != "below") {
        fail("InvalidStrategyJson", "rule dir must be 'above' or 'below'");
    }
    rule.dir = dir == "above" ? CrossDir::Above : CrossDir::Below;
    rule.param = j.value("param", 0.0);
    return rule;
}

}  // namespace

std::string CrossRule::label() const {
    std::string side = dir == CrossDir::Above ? "above" : "below";
    switch (subject) {
        case RuleSubject::BollingerLower:
        case RuleSubject::BollingerUpper:
            return "close_" + side + "_" + subject_name(subject) + "_" +
                   csv::format_double(param);
        case RuleSubject::Rsi:
            return "rsi_" + side + "_" + csv::format_double(param);
        case RuleSubject::Ema:
            return "close_" + side + "_ema";
        case RuleSubject::Fib:
            return "close_" + side + "_fib_" + csv::format_double(param);
    }
    return "?";
}

void StrategySpec::validate() const {
    if (entries.empty() || exits.empty()) {
        fail("InvalidStrategy", name() + ": entry and exit rule lists must be non-empty");
    }
    bool long_side = direction == Direction::LongOnly;
    if (long_side && !(take_profit_mult > 0.0 && stop_loss_mult < 0.0)) {
        fail("InvalidStrategy",
             name() + ": a long strategy needs take_profit_mult > 0 > stop_loss_mult");
    }
    if (!long_side && !(take_profit_mult < 0.0 && stop_loss_mult > 0.0)) {
        fail("InvalidStrategy",
             name() + ": a short strategy needs take_profit_mult < 0 < stop_loss_mult");
    }
    if (bollinger_n < 2 || rsi_n < 1 || ema_n < 1 || atr_n < 1 || swing_lookback < 2) {
        fail("InvalidStrategy", name() + ": indicator windows out of range");
    }
    for (const auto& rule : entries) {
        if (rule.subject == RuleSubject::Rsi && !(rule.param > 0.0 && rule.param < 100.0)) {
            fail("InvalidStrategy", name() + ": RSI thresholds must lie in (0,100)");
        }
    }
}

std::string StrategySpec::to_json() const {
    json j;
    j["regime"] = regimes::to_string(regime);
    j["direction"] = direction == Direction::LongOnly ? "long" : "short";
    j["entries"] = json::array();
    for (const auto& rule : entries) {
        j["entries"].push_back(rule_to_json(rule));
    }
    j["exits"] = json::array();
    for (const auto& rule : exits) {
        j["exits"].push_back(rule_to_json(rule));
    }
    j["take_profit_mult"] = take_profit_mult;
    j["stop_loss_mult"] = stop_loss_mult;
    j["bollinger_n"] = bollinger_n;
    j["rsi_n"] = rsi_n;
    j["ema_n"] = ema_n;
    j["atr_n"] = atr_n;
    j["swing_lookback"] = swing_lookback;
    return j.dump(2) + "\n";
}

StrategySpec StrategySpec::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail("InvalidStrategyJson", e.what());
    }
    StrategySpec spec;
    try {
        spec.regime = regimes::regime_from_string(j.at("regime").get<std::string>());
        std::string dir = j.at("direction").get<std::string>();
        spec.direction = dir == "short" ? Direction::ShortOnly : Direction::LongOnly;
        for (const auto& rule : j.at("entries")) {
            spec.entries.push_back(rule_from_json(rule));
        }
        for (const auto& rule : j.at("exits")) {
            spec.exits.push_back(rule_from_json(rule));
        }
        spec.take_profit_mult = j.at("take_profit_mult").get<double>();
        spec.stop_loss_mult = j.at("stop_loss_mult").get<double>();
        spec.bollinger_n = j.value("bollinger_n", std::size_t{20});
        spec.rsi_n = j.value("rsi_n", std::size_t{14});
        spec.ema_n = j.value("ema_n", std::size_t{10});
        spec.atr_n = j.value("atr_n", std::size_t{20});
        spec.swing_lookback = j.value("swing_lookback", std::size_t{60});
    } catch (const json::exception& e) {
        fail("InvalidStrategyJson", e.what());
    }
    spec.validate();
    return spec;
}

std::vector<StrategySpec> builtin_specs() {
    using S = RuleSubject;
    using D = CrossDir;
    std::vector<StrategySpec> specs;

    {   // Advance: trade the uptrend, buying pullbacks and breakouts.
        StrategySpec s;
        s.regime = RegimeLabel::Advance;
        s.direction = Direction::LongOnly;
        s.entries = {{S::BollingerLower, D::Below, 1.5},
                     {S::Rsi, D::Below, 40.0},
                     {S::Fib, D::Below, 0.382}};
        s.exits = {{S::BollingerUpper, D::Above, 1.5},
                   {S::Rsi, D::Above, 70.0},
                   {S::Ema, D::Below, 0.0},
                   {S::Fib, D::Below, 0.618}};
        s.take_profit_mult = 3.0;
        s.stop_loss_mult = -3.0;
        specs.push_back(std::move(s));
    }
    {   // Accumulation: buy the lows of the range, tighter stop.
        StrategySpec s;
        s.regime = RegimeLabel::Accumulation;
        s.direction = Direction::LongOnly;
        s.entries = {{S::BollingerLower, D::Below, 1.0},
                     {S::Rsi, D::Below, 40.0},
                     {S::Fib, D::Below, 0.382}};
        s.exits = {{S::BollingerUpper, D::Above, 1.5},
                   {S::Rsi, D::Above, 70.0},
                   {S::Ema, D::Below, 0.0},
                   {S::Fib, D::Below, 0.618}};
        s.take_profit_mult = 3.0;
        s.stop_loss_mult = -2.0;
        specs.push_back(std::move(s));
    }
    {   // Decline: short the downtrend's pullbacks and breakdowns.
        StrategySpec s;
        s.regime = RegimeLabel::Decline;
        s.direction = Direction::ShortOnly;
        s.entries = {{S::BollingerUpper, D::Above, 1.5},
                     {S::Rsi, D::Above, 60.0},
                     {S::Ema, D::Above, 0.0},
                     {S::Fib, D::Above, 0.618}};
        s.exits = {{S::BollingerLower, D::Below, 1.0},
                   {S::Rsi, D::Below, 20.0},
                   {S::Ema, D::Below, 0.0}};
        s.take_profit_mult = -5.0;
        s.stop_loss_mult = 5.0;
        specs.push_back(std::move(s));
    }
    {   // Distribution: short the highs of the range.
        StrategySpec s;
        s.regime = RegimeLabel::Distribution;
        s.direction = Direction::ShortOnly;
        s.entries = {{S::BollingerUpper, D::Above, 1.5},
                     {S::Rsi, D::Above, 60.0},
                     {S::Fib, D::Above, 0.618}};
        s.exits = {{S::BollingerUpper, D::Above, 1.0},
                   {S::Rsi, D::Below, 20.0}};
        s.take_profit_mult = -3.0;
        s.stop_loss_mult = 3.0;
        specs.push_back(std::move(s));
    }
    for (const auto& spec : specs) {
        spec.validate();
    }
    return specs;
}

StrategySpec builtin_spec(regimes::RegimeLabel regime) {
    for (auto& spec : builtin_specs()) {
        if (spec.regime == regime) {
            return spec;
        }
    }
    fail("UnknownRegime", "no builtin spec for regime");
}

void AdaptiveConfig::validate() const {
    if (!(bullish_confirm > 0.0) || !(bearish_confirm > 0.0)) {
        fail("InvalidStrategy", "adaptive confirmation thresholds must be positive");
    }
}

}  // namespace regimekit::strategy
