#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regimekit/common/error.h"
#include "regimekit/indicators/indicators.h"
#include "support/test_support.h"

using namespace regimekit;
using indicators::IndicatorSeries;
using testsupport::make_price_series;
using testsupport::random_walk_closes;

namespace {

IndicatorSeries closes_of(const std::vector<double>& closes) {
    return indicators::close_series(make_price_series(closes));
}

bool near(double a, double b, double tol = 1e-10) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("sma basics and oracle") {
    auto constant = closes_of(std::vector<double>(10, 7.5));
    auto s = indicators::sma(constant, 4);
    CHECK(s.warmup == 3);
    for (std::size_t t = s.warmup; t < s.size(); ++t) {
        CHECK(s.values[t] == doctest::Approx(7.5).epsilon(1e-14));
    }

    auto tiny = indicators::sma(closes_of({1, 2, 3}), 2);
    CHECK(std::isnan(tiny.values[0]));
    CHECK(tiny.values[1] == doctest::Approx(1.5));
    CHECK(tiny.values[2] == doctest::Approx(2.5));

    auto closes = random_walk_closes(3, 1000);
    auto fast = indicators::sma(closes_of(closes), 50);
    auto naive = testsupport::sma_naive(closes, 50);
    for (std::size_t t = 49; t < closes.size(); ++t) {
        CHECK(near(fast.values[t], naive[t]));
    }

    CHECK_THROWS_WITH_AS(indicators::sma(closes_of({1, 2}), 5),
                         doctest::Contains("WindowExceedsSeries"), Error);
}

TEST_CASE("ema seeding and closed-form oracle") {
    auto constant = closes_of(std::vector<double>(20, 3.25));
    auto e = indicators::ema(constant, 5);
    for (std::size_t t = 0; t < e.size(); ++t) {
        CHECK(e.values[t] == doctest::Approx(3.25).epsilon(1e-14));
    }

    auto two = indicators::ema(closes_of({10, 20}), 3);  // alpha = 0.5
    CHECK(two.values[0] == 10.0);
    CHECK(two.values[1] == 15.0);

    auto closes = random_walk_closes(4, 500);
    auto e2 = indicators::ema(closes_of(closes), 10);
    auto oracle = testsupport::ema_naive(closes, 10);
    for (std::size_t t = 0; t < closes.size(); ++t) {
        CHECK(near(e2.values[t], oracle[t], 1e-12));
    }
}

TEST_CASE("triangular_ma double smoothing") {
    auto constant = closes_of(std::vector<double>(300, 42.0));
    auto tma = indicators::triangular_ma(constant, 250);
    CHECK(tma.warmup == 250);
    for (std::size_t t = tma.warmup; t < tma.size(); ++t) {
        CHECK(tma.values[t] == doctest::Approx(42.0).epsilon(1e-13));
    }

    // Linear ramp stays linear with the same slope once defined.
    std::vector<double> ramp;
    for (int i = 0; i < 60; ++i) {
        ramp.push_back(100.0 + 0.5 * i);
    }
    auto tr = indicators::triangular_ma(closes_of(ramp), 20);
    for (std::size_t t = tr.warmup + 1; t < tr.size(); ++t) {
        CHECK(tr.values[t] - tr.values[t - 1] == doctest::Approx(0.5).epsilon(1e-10));
    }

    // Equals the explicit two-pass composition.
    auto closes = random_walk_closes(5, 400);
    auto series = closes_of(closes);
    auto direct = indicators::triangular_ma(series, 30);
    auto first = testsupport::sma_naive(closes, 16);   // ceil(31/2)
    std::vector<double> defined(first.begin() + 15, first.end());
    auto second = testsupport::sma_naive(defined, 16);  // floor(30/2)+1
    for (std::size_t t = direct.warmup; t < direct.size(); ++t) {
        CHECK(near(direct.values[t], second[t - 15]));
    }
}

TEST_CASE("atr on close-only and OHLC bars") {
    auto flat = make_price_series(std::vector<double>(10, 50.0));
    auto a = indicators::atr(flat, 3);
    for (std::size_t t = a.warmup; t < a.size(); ++t) {
        CHECK(a.values[t] == 0.0);
    }

    auto p = make_price_series({100, 102, 99});
    auto a2 = indicators::atr(p, 2);
    CHECK(a2.warmup == 2);
    CHECK(a2.values[2] == doctest::Approx(2.5));  // TR = [2, 3]

    auto ohlc = testsupport::random_ohlc_series(6, 300);
    auto a3 = indicators::atr(ohlc, 20);
    auto oracle = testsupport::atr_naive(ohlc, 20);
    for (std::size_t t = a3.warmup; t < a3.size(); ++t) {
        CHECK(near(a3.values[t], oracle[t]));
    }

    CHECK_THROWS_WITH_AS(indicators::atr(make_price_series({1, 2}), 2),
                         doctest::Contains("WindowExceedsSeries"), Error);
}

TEST_CASE("keltner bands") {
    auto p = make_price_series(std::vector<double>(30, 100.0));
    auto closes = indicators::close_series(p);
    auto ma = indicators::sma(closes, 5);
    auto atr = indicators::atr(p, 5);
    auto band = indicators::keltner(ma, atr, 1.0);
    for (std::size_t t = band.middle.warmup; t < band.middle.size(); ++t) {
        CHECK(band.lower.values[t] == band.middle.values[t]);  // ATR = 0
        CHECK(band.upper.values[t] == band.middle.values[t]);
    }

    // ma 100, ATR 2, mult 1 -> (98, 100, 102)
    IndicatorSeries flat_ma = indicators::constant_series(closes, 100.0);
    IndicatorSeries flat_atr = indicators::constant_series(closes, 2.0);
    auto b2 = indicators::keltner(flat_ma, flat_atr, 1.0);
    CHECK(b2.lower.values[10] == 98.0);
    CHECK(b2.middle.values[10] == 100.0);
    CHECK(b2.upper.values[10] == 102.0);

    IndicatorSeries short_series = indicators::constant_series(closes, 1.0);
    short_series.values.pop_back();
    short_series.dates.pop_back();
    CHECK_THROWS_WITH_AS(indicators::keltner(flat_ma, short_series, 1.0),
                         doctest::Contains("LengthMismatch"), Error);
}

TEST_CASE("bollinger bands") {
    auto constant = closes_of(std::vector<double>(25, 10.0));
    auto band = indicators::bollinger(constant, 20, 1.5);
    for (std::size_t t = band.middle.warmup; t < band.middle.size(); ++t) {
        CHECK(band.upper.values[t] == band.middle.values[t]);
        CHECK(band.lower.values[t] == band.middle.values[t]);
    }

    auto two = indicators::bollinger(closes_of({1.0, 3.0}), 2, 1.0);
    CHECK(two.middle.values[1] == doctest::Approx(2.0));
    CHECK(two.lower.values[1] == doctest::Approx(1.0));
    CHECK(two.upper.values[1] == doctest::Approx(3.0));

    auto closes = random_walk_closes(7, 600);
    auto b = indicators::bollinger(closes_of(closes), 20, 1.5);
    auto oracle = testsupport::bollinger_naive(closes, 20, 1.5);
    for (std::size_t t = b.middle.warmup; t < b.middle.size(); ++t) {
        CHECK(near(b.lower.values[t], oracle.lower[t]));
        CHECK(near(b.middle.values[t], oracle.middle[t]));
        CHECK(near(b.upper.values[t], oracle.upper[t]));
    }
}

TEST_CASE("rsi extremes and oracle") {
    std::vector<double> rising, falling;
    for (int i = 0; i < 40; ++i) {
        rising.push_back(100.0 + i);
        falling.push_back(100.0 - i);
    }
    auto r_up = indicators::rsi(closes_of(rising), 14);
    auto r_down = indicators::rsi(closes_of(falling), 14);
    for (std::size_t t = r_up.warmup; t < r_up.size(); ++t) {
        CHECK(r_up.values[t] == 100.0);
        CHECK(r_down.values[t] == 0.0);
    }

    // Alternating +1/-1: the two-bar cycle averages exactly 50.
    std::vector<double> alternating = {100.0};
    for (int i = 0; i < 120; ++i) {
        alternating.push_back(alternating.back() + (i % 2 == 0 ? 1.0 : -1.0));
    }
    auto r_alt = indicators::rsi(closes_of(alternating), 14);
    std::size_t last = r_alt.size() - 1;
    CHECK((r_alt.values[last] + r_alt.values[last - 1]) / 2.0 ==
          doctest::Approx(50.0).epsilon(1e-9));
    CHECK(r_alt.values[last] > 40.0);
    CHECK(r_alt.values[last] < 60.0);

    auto closes = random_walk_closes(8, 400);
    auto r = indicators::rsi(closes_of(closes), 14);
    auto oracle = testsupport::rsi_naive(closes, 14);
    for (std::size_t t = r.warmup; t < r.size(); ++t) {
        CHECK(near(r.values[t], oracle[t]));
    }
}

TEST_CASE("macd composition") {
    auto constant = closes_of(std::vector<double>(50, 20.0));
    auto m = indicators::macd(constant, 12, 26, 9);
    for (std::size_t t = 0; t < m.macd_line.size(); ++t) {
        CHECK(m.macd_line.values[t] == 0.0);
        CHECK(m.signal_line.values[t] == 0.0);
        CHECK(m.histogram.values[t] == 0.0);
    }

    CHECK_THROWS_WITH_AS(indicators::macd(constant, 26, 26, 9),
                         doctest::Contains("InvalidSpans"), Error);

    auto closes = random_walk_closes(9, 300);
    auto series = closes_of(closes);
    auto m2 = indicators::macd(series, 12, 26, 9);
    auto fast = testsupport::ema_naive(closes, 12);
    auto slow = testsupport::ema_naive(closes, 26);
    std::vector<double> line(closes.size());
    for (std::size_t t = 0; t < closes.size(); ++t) {
        line[t] = fast[t] - slow[t];
        CHECK(near(m2.macd_line.values[t], line[t], 1e-10));
    }
    auto signal = testsupport::ema_naive(line, 9);
    for (std::size_t t = 0; t < closes.size(); ++t) {
        CHECK(near(m2.signal_line.values[t], signal[t], 1e-10));
        CHECK(near(m2.histogram.values[t], line[t] - signal[t], 1e-10));
    }
}

TEST_CASE("swing extremes") {
    std::vector<double> rising;
    for (int i = 0; i < 30; ++i) {
        rising.push_back(10.0 + i);
    }
    auto s = indicators::swing_extremes(closes_of(rising), 5);
    for (std::size_t t = s.high.warmup; t < s.high.size(); ++t) {
        CHECK(s.high.values[t] == rising[t]);
        CHECK(s.low.values[t] == rising[t - 4]);
    }

    auto constant = closes_of(std::vector<double>(30, 9.0));
    auto sc = indicators::swing_extremes(constant, 5);
    for (std::size_t t = sc.high.warmup; t < sc.high.size(); ++t) {
        CHECK(sc.high.values[t] == 9.0);
        CHECK(sc.low.values[t] == 9.0);
    }

    auto closes = random_walk_closes(10, 500);
    auto sw = indicators::swing_extremes(closes_of(closes), 60);
    auto oracle = testsupport::swing_naive(closes, 60);
    for (std::size_t t = sw.high.warmup; t < sw.high.size(); ++t) {
        CHECK(sw.high.values[t] == oracle.high[t]);
        CHECK(sw.low.values[t] == oracle.low[t]);
    }
}

TEST_CASE("fibonacci levels") {
    auto levels = indicators::fib_levels(0.0, 100.0);
    CHECK(levels[0] == doctest::Approx(76.4));
    CHECK(levels[1] == doctest::Approx(61.8));
    CHECK(levels[2] == doctest::Approx(50.0));
    CHECK(levels[3] == doctest::Approx(38.2));
    CHECK(levels[4] == doctest::Approx(0.0));

    auto degenerate = indicators::fib_levels(42.0, 42.0);
    for (double level : degenerate) {
        CHECK(level == 42.0);
    }

    CHECK(indicators::fib_level(50.0, 150.0, 0.382) == doctest::Approx(111.8));
    CHECK_THROWS_WITH_AS(indicators::fib_level(10.0, 5.0, 0.5),
                         doctest::Contains("InvertedSwing"), Error);
}

TEST_CASE("shift equivariance") {
    const double shift = 37.0;
    auto closes = random_walk_closes(11, 400);
    std::vector<double> shifted = closes;
    for (double& v : shifted) {
        v += shift;
    }
    auto base = closes_of(closes);
    auto moved = closes_of(shifted);
    auto p_base = make_price_series(closes);
    auto p_moved = make_price_series(shifted);

    auto s1 = indicators::sma(base, 20);
    auto s2 = indicators::sma(moved, 20);
    auto e1 = indicators::ema(base, 10);
    auto e2 = indicators::ema(moved, 10);
    auto t1 = indicators::triangular_ma(base, 30);
    auto t2 = indicators::triangular_ma(moved, 30);
    auto b1 = indicators::bollinger(base, 20, 1.5);
    auto b2 = indicators::bollinger(moved, 20, 1.5);
    auto a1 = indicators::atr(p_base, 20);
    auto a2 = indicators::atr(p_moved, 20);
    auto w1 = indicators::swing_extremes(base, 30);
    auto w2 = indicators::swing_extremes(moved, 30);

    for (std::size_t t = 0; t < closes.size(); ++t) {
        if (s1.defined(t)) CHECK(near(s2.values[t], s1.values[t] + shift, 1e-9));
        if (e1.defined(t)) CHECK(near(e2.values[t], e1.values[t] + shift, 1e-9));
        if (t1.defined(t)) CHECK(near(t2.values[t], t1.values[t] + shift, 1e-9));
        if (b1.middle.defined(t)) {
            CHECK(near(b2.middle.values[t], b1.middle.values[t] + shift, 1e-9));
            // Band width is shift-invariant.
            CHECK(near(b2.upper.values[t] - b2.lower.values[t],
                       b1.upper.values[t] - b1.lower.values[t], 1e-8));
        }
        if (a1.defined(t)) CHECK(near(a2.values[t], a1.values[t], 1e-9));
        if (w1.high.defined(t)) {
            CHECK(near(w2.high.values[t], w1.high.values[t] + shift, 1e-12));
            CHECK(near(indicators::fib_level(w2.low.values[t], w2.high.values[t], 0.382),
                       indicators::fib_level(w1.low.values[t], w1.high.values[t], 0.382) + shift,
                       1e-9));
        }
    }

    // RSI and MACD crossing dates are unchanged by a shift (their inputs are
    // price differences).
    auto r1 = indicators::rsi(base, 14);
    auto r2 = indicators::rsi(moved, 14);
    for (std::size_t t = r1.warmup; t < r1.size(); ++t) {
        CHECK(near(r2.values[t], r1.values[t], 1e-8));
    }
    auto m1 = indicators::macd(base, 12, 26, 9);
    auto m2 = indicators::macd(moved, 12, 26, 9);
    for (std::size_t t = 0; t < m1.macd_line.size(); ++t) {
        CHECK(std::abs(m2.macd_line.values[t] - m1.macd_line.values[t]) < 1e-8);
    }
}

TEST_CASE("scale equivariance") {
    const double lambda = 2.5;
    auto closes = random_walk_closes(12, 400);
    std::vector<double> scaled = closes;
    for (double& v : scaled) {
        v *= lambda;
    }
    auto base = closes_of(closes);
    auto big = closes_of(scaled);

    auto s1 = indicators::sma(base, 20);
    auto s2 = indicators::sma(big, 20);
    auto b1 = indicators::bollinger(base, 20, 2.0);
    auto b2 = indicators::bollinger(big, 20, 2.0);
    auto a1 = indicators::atr(make_price_series(closes), 20);
    auto a2 = indicators::atr(make_price_series(scaled), 20);
    auto r1 = indicators::rsi(base, 14);
    auto r2 = indicators::rsi(big, 14);

    for (std::size_t t = 0; t < closes.size(); ++t) {
        if (s1.defined(t)) CHECK(near(s2.values[t], lambda * s1.values[t], 1e-10));
        if (b1.upper.defined(t)) CHECK(near(b2.upper.values[t], lambda * b1.upper.values[t], 1e-10));
        if (a1.defined(t)) CHECK(near(a2.values[t], lambda * a1.values[t], 1e-10));
        if (r1.defined(t)) CHECK(near(r2.values[t], r1.values[t], 1e-9));
    }
}

TEST_CASE("band ordering holds on random data") {
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        auto closes = random_walk_closes(seed, 300);
        auto series = closes_of(closes);
        auto boll = indicators::bollinger(series, 20, 1.5);
        auto p = make_price_series(closes);
        auto tma = indicators::triangular_ma(series, 50);
        auto atr = indicators::atr(p, 20);
        auto kelt = indicators::keltner(tma, atr, 1.0);
        for (const auto* band : {&boll, &kelt}) {
            for (std::size_t t = band->middle.warmup; t < band->middle.size(); ++t) {
                CHECK(band->lower.values[t] <= band->middle.values[t]);
                CHECK(band->middle.values[t] <= band->upper.values[t]);
            }
        }
    }
}
