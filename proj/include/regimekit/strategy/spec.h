#pragma once

#include <string>
#include <vector>

#include "regimekit/regimes/labels.h"

namespace regimekit::strategy {

enum class Direction { LongOnly, ShortOnly };

enum class CrossDir { Above, Below };

// What the close (or the RSI) must cross for a rule to fire.
enum class RuleSubject {
    BollingerLower,  // close vs lower band; param = SD multiple
    BollingerUpper,  // close vs upper band; param = SD multiple
    Rsi,             // RSI vs constant; param = threshold
    Ema,             // close vs short EMA; param unused
    Fib,             // close vs retracement line; param = ratio
};

struct CrossRule {
    RuleSubject subject;
    CrossDir dir;
    double param = 0.0;

    std::string label() const;
};

// One regime's declarative rule set. Entry rules OR together, as do exits;
// take-profit and stop-loss are close crossings of EMA + mult * ATR levels
// (signed multiples, so a short's take-profit sits below the EMA).
struct StrategySpec {
    regimes::RegimeLabel regime = regimes::RegimeLabel::Advance;
    Direction direction = Direction::LongOnly;
    std::vector<CrossRule> entries;
    std::vector<CrossRule> exits;
    double take_profit_mult = 0.0;
    double stop_loss_mult = 0.0;
    std::size_t bollinger_n = 20;
    std::size_t rsi_n = 14;
    std::size_t ema_n = 10;
    std::size_t atr_n = 20;
    std::size_t swing_lookback = 60;

    std::string name() const { return regimes::to_string(regime); }

    // Non-empty rule lists; LongOnly needs take_profit_mult > 0 >
    // stop_loss_mult, ShortOnly the reverse.
    void validate() const;

    std::string to_json() const;
    static StrategySpec from_json(const std::string& text);
};

// The four regime-tailored rule sets, indexed by regime.
std::vector<StrategySpec> builtin_specs();
StrategySpec builtin_spec(regimes::RegimeLabel regime);

struct AdaptiveConfig {
    double bullish_confirm = 0.01;  // close must rise 1% past the change-date close
    double bearish_confirm = 0.05;  // or fall 5% for a bearish switch

    void validate() const;
};

}  // namespace regimekit::strategy
