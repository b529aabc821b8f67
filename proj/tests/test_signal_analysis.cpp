#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regimekit/common/error.h"
#include "regimekit/signal/crossings.h"
#include "support/test_support.h"

using namespace regimekit;
using regimes::RegimeLabel;
using signal::CrossKind;
using testsupport::make_price_series;

namespace {

indicators::IndicatorSeries series_of(const std::vector<double>& values) {
    return indicators::close_series(make_price_series(values));
}

}  // namespace

TEST_CASE("a simple strict crossing") {
    auto events = signal::detect_crossings(series_of({1.0, 3.0}), 2.0, "x");
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == CrossKind::CrossAbove);
    CHECK(events[0].index == 1);
}

TEST_CASE("flat touch then continuation counts at the continuation bar") {
    auto events = signal::detect_crossings(series_of({1.0, 2.0, 3.0}), 2.0, "x");
    REQUIRE(events.size() == 1);
    CHECK(events[0].kind == CrossKind::CrossAbove);
    CHECK(events[0].index == 2);

    // Touch then retreat: no event at all.
    auto none = signal::detect_crossings(series_of({1.0, 2.0, 1.0}), 2.0, "x");
    CHECK(none.empty());

    // Equality never generates an event.
    auto flat = signal::detect_crossings(series_of({2.0, 2.0, 2.0}), 2.0, "x");
    CHECK(flat.empty());
}

TEST_CASE("sine wave crossings match the sign-change scan") {
    std::vector<double> wave;
    for (int i = 0; i < 500; ++i) {
        wave.push_back(100.0 + 10.0 * std::sin(i * 0.13));
    }
    auto events = signal::detect_crossings(series_of(wave), 100.0, "sine");

    std::size_t sign_changes = 0;
    int last = 0;
    for (double v : wave) {
        int side = v > 100.0 ? 1 : (v < 100.0 ? -1 : 0);
        if (side != 0) {
            if (last != 0 && side != last) {
                ++sign_changes;
            }
            last = side;
        }
    }
    CHECK(events.size() == sign_changes);

    std::size_t above = 0;
    for (const auto& event : events) {
        if (event.kind == CrossKind::CrossAbove) {
            ++above;
        }
    }
    // Up and down crossings alternate, so each kind is half the total.
    CHECK(std::abs(static_cast<long>(above) - static_cast<long>(events.size() - above)) <= 1);
}

TEST_CASE("every reported event satisfies the strict definition on re-scan") {
    auto closes = testsupport::random_walk_closes(3, 400);
    auto a = series_of(closes);
    auto b = indicators::constant_series(a, closes.front());
    auto events = signal::detect_crossings(a, b, "walk");
    REQUIRE(!events.empty());
    for (const auto& event : events) {
        double now = a.values[event.index] - b.values[event.index];
        CHECK(now != 0.0);
        CHECK((event.kind == CrossKind::CrossAbove) == (now > 0.0));
        // The last strictly-unequal value before the event sits on the other side.
        std::size_t back = event.index;
        while (back > 0) {
            --back;
            double prev = a.values[back] - b.values[back];
            if (prev != 0.0) {
                CHECK((prev > 0.0) != (now > 0.0));
                break;
            }
        }
    }
}

TEST_CASE("events are tagged with the prevailing regime and dropped outside") {
    auto a = series_of({1.0, 3.0, 1.0, 3.0});
    std::vector<Date> label_dates = {a.dates[0], a.dates[1]};  // only the first two days
    auto labels = testsupport::constant_labels(label_dates, RegimeLabel::Decline);
    auto events = signal::detect_crossings(a, 2.0, "x", &labels);
    REQUIRE(events.size() == 1);  // crossings at index 1 (labeled) and 2,3 (unlabeled)
    CHECK(events[0].regime == RegimeLabel::Decline);
    CHECK(events[0].index == 1);
}

TEST_CASE("no overlap raises") {
    indicators::IndicatorSeries a = series_of({1.0, 2.0});
    a.warmup = 2;  // nothing defined
    CHECK_THROWS_WITH_AS(signal::detect_crossings(a, 1.0, "x"),
                         doctest::Contains("NoOverlap"), Error);
}

TEST_CASE("forward paths compound simple returns") {
    // Event at index 1, returns +1%, +1% afterwards, single regime.
    std::vector<double> closes = {100.0, 100.0, 101.0, 102.01};
    auto prices = make_price_series(closes);
    auto returns = data::to_returns(prices, data::ReturnKind::Simple);
    std::vector<Date> all_dates;
    for (const auto& bar : prices.bars) {
        all_dates.push_back(bar.date);
    }
    auto labels = testsupport::constant_labels(all_dates, RegimeLabel::Advance);

    signal::CrossEvent event;
    event.date = prices.bars[1].date;
    event.index = 1;
    event.kind = CrossKind::CrossAbove;
    event.subject = "fixture";
    event.regime = RegimeLabel::Advance;

    auto paths = signal::forward_paths({event}, returns, labels, 30);
    REQUIRE(paths.size() == 1);
    REQUIRE(paths[0].mean_cum_return.size() == 2);
    CHECK(paths[0].mean_cum_return[0] == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(paths[0].mean_cum_return[1] == doctest::Approx(0.0201).epsilon(1e-12));
    CHECK(paths[0].total_events == 1);
}

TEST_CASE("forward paths are zero on constant prices") {
    std::vector<double> closes(40, 100.0);
    auto prices = make_price_series(closes);
    auto returns = data::to_returns(prices, data::ReturnKind::Simple);
    std::vector<Date> dates;
    for (const auto& bar : prices.bars) {
        dates.push_back(bar.date);
    }
    auto labels = testsupport::constant_labels(dates, RegimeLabel::Distribution);

    signal::CrossEvent event;
    event.date = dates[5];
    event.index = 5;
    event.kind = CrossKind::CrossBelow;
    event.subject = "flat";
    event.regime = RegimeLabel::Distribution;

    auto paths = signal::forward_paths({event}, returns, labels, 10);
    REQUIRE(paths.size() == 1);
    for (double v : paths[0].mean_cum_return) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("paths truncate at the regime change") {
    auto closes = testsupport::random_walk_closes(9, 30);
    auto prices = make_price_series(closes);
    auto returns = data::to_returns(prices, data::ReturnKind::Simple);
    std::vector<Date> dates;
    for (const auto& bar : prices.bars) {
        dates.push_back(bar.date);
    }
    auto labels = testsupport::constant_labels(dates, RegimeLabel::Advance);
    // Regime flips 4 dates after the event date: offsets land on the 3
    // same-regime days in between.
    std::size_t event_idx = 10;
    for (std::size_t i = event_idx + 4; i < labels.size(); ++i) {
        labels.regime[i] = RegimeLabel::Decline;
    }

    signal::CrossEvent event;
    event.date = dates[event_idx];
    event.index = event_idx;
    event.kind = CrossKind::CrossAbove;
    event.subject = "trunc";
    event.regime = RegimeLabel::Advance;

    auto paths = signal::forward_paths({event}, returns, labels, 30);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].mean_cum_return.size() == 3);
}

TEST_CASE("group event counts add up") {
    auto closes = testsupport::random_walk_closes(4, 600);
    auto prices = make_price_series(closes);
    auto returns = data::to_returns(prices, data::ReturnKind::Simple);
    auto close_series = series_of(closes);

    std::vector<Date> dates;
    for (const auto& bar : prices.bars) {
        dates.push_back(bar.date);
    }
    auto labels = testsupport::constant_labels(dates, RegimeLabel::Advance);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if ((i / 60) % 2 == 1) {
            labels.regime[i] = RegimeLabel::Decline;
        }
    }

    auto events = signal::detect_crossings(close_series,
                                           indicators::constant_series(close_series, 100.0),
                                           "level_100", &labels);
    auto paths = signal::forward_paths(events, returns, labels, 15);
    std::size_t grouped = 0;
    for (const auto& path : paths) {
        grouped += path.total_events;
        if (!path.n_events.empty()) {
            CHECK(path.n_events[0] <= path.total_events);
        }
        CHECK(path.mean_cum_return.size() <= 15);
    }
    CHECK(grouped == events.size());
}
