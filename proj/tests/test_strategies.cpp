#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regimekit/common/error.h"
#include "regimekit/strategy/engine.h"
#include "regimekit/strategy/spec.h"
#include "support/test_support.h"

using namespace regimekit;
using regimes::RegimeLabel;
using strategy::CrossDir;
using strategy::CrossRule;
using strategy::Direction;
using strategy::RuleSubject;
using strategy::StrategySpec;
using testsupport::make_price_series;

namespace {

// Entry on a lower-band breach, exit on an upper-band breach, with a tiny
// Bollinger window so every band value is hand-checkable. TP/SL multiples of
// +/-100 keep the levels unreachable.
StrategySpec band_only_spec(double entry_k, double exit_k) {
    StrategySpec spec;
    spec.regime = RegimeLabel::Advance;
    spec.direction = Direction::LongOnly;
    spec.entries = {{RuleSubject::BollingerLower, CrossDir::Below, entry_k}};
    spec.exits = {{RuleSubject::BollingerUpper, CrossDir::Above, exit_k}};
    spec.take_profit_mult = 100.0;
    spec.stop_loss_mult = -100.0;
    spec.bollinger_n = 3;
    spec.ema_n = 1;
    spec.atr_n = 1;
    return spec;
}

std::vector<Date> dates_of(const data::PriceSeries& p) {
    std::vector<Date> dates;
    for (const auto& bar : p.bars) {
        dates.push_back(bar.date);
    }
    return dates;
}

// Independent re-derivation of the expected position path: naive bands,
// strict crossing scan and the flat/positioned state machine.
std::vector<int> naive_band_positions(const std::vector<double>& closes, std::size_t n,
                                      double entry_k, double exit_k) {
    auto entry_band = testsupport::bollinger_naive(closes, n, entry_k);
    auto exit_band = testsupport::bollinger_naive(closes, n, exit_k);
    std::vector<int> positions(closes.size(), 0);
    int state = 0;
    int side_lower = 0, side_upper = 0;
    for (std::size_t t = 0; t < closes.size(); ++t) {
        bool cross_below_lower = false, cross_above_upper = false;
        if (!std::isnan(entry_band.lower[t])) {
            double diff = closes[t] - entry_band.lower[t];
            int side = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
            if (side != 0) {
                cross_below_lower = side_lower != 0 && side == -1 && side_lower == 1;
                side_lower = side;
            }
        }
        if (!std::isnan(exit_band.upper[t])) {
            double diff = closes[t] - exit_band.upper[t];
            int side = diff > 0 ? 1 : (diff < 0 ? -1 : 0);
            if (side != 0) {
                cross_above_upper = side_upper != 0 && side == 1 && side_upper == -1;
                side_upper = side;
            }
        }
        if (state != 0 && cross_above_upper) {
            state = 0;
        } else if (state == 0 && cross_below_lower) {
            state = 1;
        }
        positions[t] = state;
    }
    return positions;
}

}  // namespace

TEST_CASE("builtin specs match the tailored rule sets") {
    auto specs = strategy::builtin_specs();
    REQUIRE(specs.size() == 4);

    const auto& advance = specs[0];
    CHECK(advance.regime == RegimeLabel::Advance);
    CHECK(advance.direction == Direction::LongOnly);
    CHECK(advance.entries.size() == 3);
    CHECK(advance.exits.size() == 4);
    CHECK(advance.take_profit_mult == 3.0);
    CHECK(advance.stop_loss_mult == -3.0);
    CHECK(advance.entries[0].subject == RuleSubject::BollingerLower);
    CHECK(advance.entries[0].param == 1.5);
    CHECK(advance.entries[1].param == 40.0);
    CHECK(advance.entries[2].param == 0.382);
    CHECK(advance.exits[1].subject == RuleSubject::Rsi);
    CHECK(advance.exits[1].dir == CrossDir::Above);
    CHECK(advance.exits[1].param == 70.0);

    const auto& accumulation = specs[1];
    CHECK(accumulation.entries[0].param == 1.0);  // 1 SD entry band
    CHECK(accumulation.stop_loss_mult == -2.0);

    const auto& decline = specs[2];
    CHECK(decline.direction == Direction::ShortOnly);
    CHECK(decline.take_profit_mult == -5.0);
    CHECK(decline.stop_loss_mult == 5.0);  // stop above the EMA
    CHECK(decline.entries.size() == 4);
    CHECK(decline.exits.size() == 3);

    const auto& distribution = specs[3];
    CHECK(distribution.direction == Direction::ShortOnly);
    CHECK(distribution.take_profit_mult == -3.0);
    CHECK(distribution.stop_loss_mult == 3.0);
    CHECK(distribution.exits[0].subject == RuleSubject::BollingerUpper);
    CHECK(distribution.exits[0].dir == CrossDir::Above);
    CHECK(distribution.exits[0].param == 1.0);

    for (const auto& spec : specs) {
        CHECK_NOTHROW(spec.validate());
    }
}

TEST_CASE("spec validation rejects inconsistent stops") {
    auto spec = band_only_spec(1.0, 1.0);
    spec.stop_loss_mult = 2.0;  // long with a stop above the EMA
    CHECK_THROWS_WITH_AS(spec.validate(), doctest::Contains("InvalidStrategy"), Error);

    auto empty = band_only_spec(1.0, 1.0);
    empty.entries.clear();
    CHECK_THROWS_WITH_AS(empty.validate(), doctest::Contains("InvalidStrategy"), Error);
}

TEST_CASE("strategy spec json round trip") {
    auto spec = strategy::builtin_spec(RegimeLabel::Decline);
    auto text = spec.to_json();
    auto back = StrategySpec::from_json(text);
    CHECK(back.regime == spec.regime);
    CHECK(back.direction == spec.direction);
    CHECK(back.entries.size() == spec.entries.size());
    CHECK(back.exits.size() == spec.exits.size());
    CHECK(back.take_profit_mult == spec.take_profit_mult);
    CHECK(back.stop_loss_mult == spec.stop_loss_mult);
    CHECK(back.entries[1].param == spec.entries[1].param);
}

TEST_CASE("no firing rules means all-zero positions and an empty log") {
    auto p = make_price_series(std::vector<double>(30, 100.0));  // flat: no strict crossings
    auto spec = band_only_spec(1.0, 1.0);
    auto bundle = strategy::build_bundle(p, {spec});
    auto result = strategy::evaluate(spec, bundle);
    CHECK(result.log.empty());
    for (int position : result.positions.position) {
        CHECK(position == 0);
    }
}

TEST_CASE("hand-traced band fixture enters at t=4 and exits at t=8") {
    // Bands use n=3, k=1. Bars 0-3 sit strictly inside the band, bar 4
    // breaks below the lower band, bars 5-7 return inside, bar 8 breaks
    // above the upper band.
    std::vector<double> closes = {10.0, 10.1, 10.0, 10.1, 8.0, 10.0, 10.1, 10.0, 12.5, 10.0, 10.1};
    auto p = make_price_series(closes);
    auto spec = band_only_spec(1.0, 1.0);
    auto bundle = strategy::build_bundle(p, {spec});
    auto result = strategy::evaluate(spec, bundle);

    std::vector<int> expected = {0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0};
    CHECK(result.positions.position == expected);
    REQUIRE(result.log.size() == 2);
    CHECK(result.log[0].date == p.bars[4].date);
    CHECK(result.log[0].action == "enter_long");
    CHECK(result.log[1].date == p.bars[8].date);
    CHECK(result.log[1].action == "exit");

    // The independent naive trace agrees.
    CHECK(naive_band_positions(closes, 3, 1.0, 1.0) == expected);
}

TEST_CASE("exit beats entry on a simultaneous signal") {
    // Entry and exit share the same condition, so the second breach fires
    // both while positioned; the exit must win.
    std::vector<double> closes = {10.0, 10.1, 10.0, 10.1, 8.0, 10.0, 10.1, 10.0, 8.0, 10.0};
    auto p = make_price_series(closes);
    StrategySpec spec = band_only_spec(1.0, 1.0);
    spec.exits = spec.entries;  // exit on the same lower-band breach
    auto bundle = strategy::build_bundle(p, {spec});
    auto result = strategy::evaluate(spec, bundle);

    std::vector<int> expected = {0, 0, 0, 0, 1, 1, 1, 1, 0, 0};
    CHECK(result.positions.position == expected);
    REQUIRE(result.log.size() == 2);
    CHECK(result.log[1].action == "exit");
    CHECK(result.log[1].date == p.bars[8].date);
}

TEST_CASE("take profit level exits a long") {
    // Slow drift keeps the EMA+3*ATR level close; a jump crosses it.
    std::vector<double> closes = {10.0, 10.1, 10.0, 10.1, 8.0, 8.1, 8.0, 8.1, 12.0, 12.1};
    auto p = make_price_series(closes);
    StrategySpec spec = band_only_spec(1.0, 1.0);
    spec.take_profit_mult = 3.0;
    spec.stop_loss_mult = -100.0;
    spec.ema_n = 3;
    spec.atr_n = 2;
    spec.exits = {{RuleSubject::BollingerUpper, CrossDir::Above, 100.0}};  // unreachable
    auto bundle = strategy::build_bundle(p, {spec});
    auto result = strategy::evaluate(spec, bundle);

    REQUIRE(result.log.size() >= 2);
    CHECK(result.log[0].action == "enter_long");
    CHECK(result.log[1].rule == "take_profit");
    CHECK(result.positions.position.back() == 0);
}

TEST_CASE("direction constraints hold on random walks") {
    auto specs = strategy::builtin_specs();
    for (std::uint64_t seed = 40; seed < 45; ++seed) {
        auto closes = testsupport::random_walk_closes(seed, 250, 0.015);
        auto p = make_price_series(closes);
        auto bundle = strategy::build_bundle(p, specs);
        for (const auto& spec : specs) {
            auto result = strategy::evaluate(spec, bundle);
            int expected_dir = spec.direction == Direction::LongOnly ? 1 : -1;
            int transitions = 0;
            for (std::size_t t = 0; t < result.positions.size(); ++t) {
                int position = result.positions.position[t];
                CHECK((position == 0 || position == expected_dir));
                if (t > 0 && position != result.positions.position[t - 1]) {
                    ++transitions;
                }
            }
            // Every transition has a log entry and vice versa.
            CHECK(transitions == static_cast<int>(result.log.size()));

            auto again = strategy::evaluate(spec, bundle);
            CHECK(again.positions.position == result.positions.position);
        }
    }
}

TEST_CASE("missing indicator is reported") {
    auto p = make_price_series(testsupport::random_walk_closes(1, 100));
    auto spec = band_only_spec(1.0, 1.0);
    auto bundle = strategy::build_bundle(p, {spec});
    StrategySpec other = spec;
    other.bollinger_n = 7;  // not in the bundle
    CHECK_THROWS_WITH_AS(strategy::evaluate(other, bundle),
                         doctest::Contains("MissingIndicator"), Error);
}

TEST_CASE("adaptive with a constant label series delegates bit-identically") {
    auto specs = strategy::builtin_specs();
    strategy::AdaptiveConfig cfg;
    int checked = 0;
    for (std::uint64_t seed = 60; seed < 65; ++seed) {
        auto closes = testsupport::random_walk_closes(seed, 300, 0.02);
        auto p = make_price_series(closes);
        auto bundle = strategy::build_bundle(p, specs);
        for (const auto& spec : specs) {
            auto labels = testsupport::constant_labels(dates_of(p), spec.regime);
            auto single = strategy::evaluate(spec, bundle);
            auto meta = strategy::adaptive(labels, cfg, bundle, specs);
            CHECK(meta.positions.position == single.positions.position);
            CHECK(meta.switches.empty());
            REQUIRE(meta.log.size() == single.log.size());
            for (std::size_t i = 0; i < meta.log.size(); ++i) {
                CHECK(meta.log[i].date == single.log[i].date);
                CHECK(meta.log[i].rule == single.log[i].rule);
                CHECK(meta.log[i].action == single.log[i].action);
            }
            ++checked;
        }
    }
    CHECK(checked == 20);
}

TEST_CASE("adaptive defaults use the 1% / 5% confirmation thresholds") {
    strategy::AdaptiveConfig cfg;
    CHECK(cfg.bullish_confirm == 0.01);
    CHECK(cfg.bearish_confirm == 0.05);
}

TEST_CASE("an unconfirmed label flip never switches the strategy") {
    // Labels flip to Decline while the price refuses to fall 5%; the flip
    // reverts, so no switch happens.
    std::vector<double> closes(60, 100.0);
    for (std::size_t i = 20; i < 30; ++i) {
        closes[i] = 97.0;  // only -3%
    }
    auto p = make_price_series(closes);
    auto specs = strategy::builtin_specs();
    auto bundle = strategy::build_bundle(p, specs);
    auto labels = testsupport::constant_labels(dates_of(p), RegimeLabel::Advance);
    for (std::size_t i = 20; i < 30; ++i) {
        labels.regime[i] = RegimeLabel::Decline;
    }
    strategy::AdaptiveConfig cfg;
    auto result = strategy::adaptive(labels, cfg, bundle, specs);
    CHECK(result.switches.empty());
}

TEST_CASE("a confirmed bearish flip exits the incumbent and switches") {
    std::vector<double> closes(60, 100.0);
    for (std::size_t i = 25; i < 60; ++i) {
        closes[i] = 94.0;  // -6%: beyond the 5% confirmation
    }
    auto p = make_price_series(closes);
    auto specs = strategy::builtin_specs();
    auto bundle = strategy::build_bundle(p, specs);
    auto labels = testsupport::constant_labels(dates_of(p), RegimeLabel::Advance);
    for (std::size_t i = 20; i < 60; ++i) {
        labels.regime[i] = RegimeLabel::Decline;
        labels.trend[i] = regimes::TrendLabel::Bearish;
        labels.variance[i] = msar::VarianceLabel::High;
    }
    strategy::AdaptiveConfig cfg;
    auto result = strategy::adaptive(labels, cfg, bundle, specs);
    REQUIRE(result.switches.size() == 1);
    CHECK(result.switches[0].from == RegimeLabel::Advance);
    CHECK(result.switches[0].to == RegimeLabel::Decline);
    CHECK(result.switches[0].change_date == p.bars[20].date);
    CHECK(result.switches[0].confirm_date == p.bars[25].date);
    // Flat at the confirmation bar.
    CHECK(result.positions.position[25] == 0);
}

TEST_CASE("restrict_positions zeroes exposure outside the regime") {
    auto p = make_price_series(testsupport::random_walk_closes(2, 80, 0.02));
    auto spec = band_only_spec(1.0, 1.0);
    auto bundle = strategy::build_bundle(p, {spec});
    auto result = strategy::evaluate(spec, bundle);

    auto labels = testsupport::constant_labels(dates_of(p), RegimeLabel::Advance);
    for (std::size_t i = 0; i < labels.size(); i += 2) {
        labels.regime[i] = RegimeLabel::Decline;
    }
    auto restricted = strategy::restrict_positions(result.positions, labels,
                                                   RegimeLabel::Advance);
    for (std::size_t i = 0; i < restricted.size(); ++i) {
        if (i % 2 == 0) {
            CHECK(restricted.position[i] == 0);
        } else {
            CHECK(restricted.position[i] == result.positions.position[i]);
        }
    }
}
