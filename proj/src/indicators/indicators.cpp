#include "regimekit/indicators/indicators.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regimekit/common/error.h"

namespace regimekit::indicators {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

IndicatorSeries blank_like(const std::vector<Date>& dates, std::size_t warmup) {
    IndicatorSeries out;
    out.dates = dates;
    out.values.assign(dates.size(), kNaN);
    out.warmup = warmup;
    return out;
}

void require_window(std::size_t len, std::size_t needed, const char* what) {
    if (len < needed) {
        fail("WindowExceedsSeries", std::string(what) + " needs " + std::to_string(needed) +
                                        " bars, series has " + std::to_string(len));
    }
}

}  // namespace

IndicatorSeries close_series(const data::PriceSeries& p) {
    IndicatorSeries out;
    out.dates.reserve(p.bars.size());
    out.values.reserve(p.bars.size());
    for (const auto& bar : p.bars) {
        out.dates.push_back(bar.date);
        out.values.push_back(bar.close);
    }
    out.warmup = 0;
    return out;
}

IndicatorSeries constant_series(const IndicatorSeries& like, double value) {
    IndicatorSeries out;
    out.dates = like.dates;
    out.values.assign(like.size(), value);
    out.warmup = 0;
    return out;
}

IndicatorSeries sma(const IndicatorSeries& p, std::size_t n) {
    if (n < 1) {
        fail("WindowExceedsSeries", "sma window must be >= 1");
    }
    require_window(p.size() - std::min(p.size(), p.warmup), n, "sma");
    IndicatorSeries out = blank_like(p.dates, p.warmup + n - 1);
    for (std::size_t t = out.warmup; t < p.size(); ++t) {
        double sum = 0.0;
        for (std::size_t i = t + 1 - n; i <= t; ++i) {
            sum += p.values[i];
        }
        out.values[t] = sum / static_cast<double>(n);
    }
    return out;
}

IndicatorSeries ema(const IndicatorSeries& p, std::size_t n) {
    if (n < 1) {
        fail("WindowExceedsSeries", "ema span must be >= 1");
    }
    require_window(p.size() - std::min(p.size(), p.warmup), 1, "ema");
    IndicatorSeries out = blank_like(p.dates, p.warmup);
    double alpha = 2.0 / (static_cast<double>(n) + 1.0);
    double value = p.values[p.warmup];
    out.values[p.warmup] = value;
    for (std::size_t t = p.warmup + 1; t < p.size(); ++t) {
        value = alpha * p.values[t] + (1.0 - alpha) * value;
        out.values[t] = value;
    }
    return out;
}

IndicatorSeries triangular_ma(const IndicatorSeries& p, std::size_t n) {
    if (n < 2) {
        fail("WindowExceedsSeries", "triangular_ma period must be >= 2");
    }
    std::size_t first = (n + 2) / 2;  // ceil((n+1)/2)
    std::size_t second = n / 2 + 1;
    return sma(sma(p, first), second);
}

IndicatorSeries atr(const data::PriceSeries& p, std::size_t n) {
    if (n < 1) {
        fail("WindowExceedsSeries", "atr window must be >= 1");
    }
    require_window(p.bars.size(), n + 1, "atr");

    const std::size_t T = p.bars.size();
    std::vector<double> tr(T, kNaN);
    for (std::size_t t = 1; t < T; ++t) {
        const auto& bar = p.bars[t];
        double prev_close = p.bars[t - 1].close;
        if (bar.has_range()) {
            tr[t] = std::max(*bar.high, prev_close) - std::min(*bar.low, prev_close);
        } else {
            tr[t] = std::abs(bar.close - prev_close);
        }
    }

    IndicatorSeries out;
    out.dates.reserve(T);
    for (const auto& bar : p.bars) {
        out.dates.push_back(bar.date);
    }
    out.values.assign(T, kNaN);
    out.warmup = n;

    double seed = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
        seed += tr[t];
    }
    double value = seed / static_cast<double>(n);
    out.values[n] = value;
    for (std::size_t t = n + 1; t < T; ++t) {
        value = (value * static_cast<double>(n - 1) + tr[t]) / static_cast<double>(n);
        out.values[t] = value;
    }
    return out;
}

Band keltner(const IndicatorSeries& ma, const IndicatorSeries& atr_series, double mult) {
    if (ma.size() != atr_series.size()) {
        fail("LengthMismatch", "moving average and ATR series differ in length");
    }
    if (!(mult > 0.0)) {
        fail("InvalidArgument", "keltner multiple must be positive");
    }
    std::size_t warmup = std::max(ma.warmup, atr_series.warmup);
    Band band;
    band.middle = blank_like(ma.dates, warmup);
    band.upper = blank_like(ma.dates, warmup);
    band.lower = blank_like(ma.dates, warmup);
    for (std::size_t t = warmup; t < ma.size(); ++t) {
        band.middle.values[t] = ma.values[t];
        band.upper.values[t] = ma.values[t] + mult * atr_series.values[t];
        band.lower.values[t] = ma.values[t] - mult * atr_series.values[t];
    }
    return band;
}

Band bollinger(const IndicatorSeries& p, std::size_t n, double k) {
    if (n < 2) {
        fail("WindowExceedsSeries", "bollinger window must be >= 2");
    }
    if (!(k > 0.0)) {
        fail("InvalidArgument", "bollinger width must be positive");
    }
    require_window(p.size() - std::min(p.size(), p.warmup), n, "bollinger");

    std::size_t warmup = p.warmup + n - 1;
    Band band;
    band.middle = blank_like(p.dates, warmup);
    band.upper = blank_like(p.dates, warmup);
    band.lower = blank_like(p.dates, warmup);
    for (std::size_t t = warmup; t < p.size(); ++t) {
        double sum = 0.0;
        for (std::size_t i = t + 1 - n; i <= t; ++i) {
            sum += p.values[i];
        }
        double mean = sum / static_cast<double>(n);
        double acc = 0.0;
        for (std::size_t i = t + 1 - n; i <= t; ++i) {
            double diff = p.values[i] - mean;
            acc += diff * diff;
        }
        double sd = std::sqrt(acc / static_cast<double>(n));  // population
        band.middle.values[t] = mean;
        band.upper.values[t] = mean + k * sd;
        band.lower.values[t] = mean - k * sd;
    }
    return band;
}

IndicatorSeries rsi(const IndicatorSeries& p, std::size_t n) {
    if (n < 1) {
        fail("WindowExceedsSeries", "rsi period must be >= 1");
    }
    std::size_t usable = p.size() - std::min(p.size(), p.warmup);
    require_window(usable, n + 1, "rsi");

    IndicatorSeries out = blank_like(p.dates, p.warmup + n);
    auto rsi_value = [](double avg_gain, double avg_loss) {
        if (avg_loss == 0.0 && avg_gain == 0.0) {
            return 50.0;  // flat window: neither gains nor losses
        }
        if (avg_loss == 0.0) {
            return 100.0;
        }
        return 100.0 - 100.0 / (1.0 + avg_gain / avg_loss);
    };

    double avg_gain = 0.0;
    double avg_loss = 0.0;
    for (std::size_t t = p.warmup + 1; t <= p.warmup + n; ++t) {
        double change = p.values[t] - p.values[t - 1];
        avg_gain += std::max(change, 0.0);
        avg_loss += std::max(-change, 0.0);
    }
    avg_gain /= static_cast<double>(n);
    avg_loss /= static_cast<double>(n);
    out.values[out.warmup] = rsi_value(avg_gain, avg_loss);

    for (std::size_t t = out.warmup + 1; t < p.size(); ++t) {
        double change = p.values[t] - p.values[t - 1];
        avg_gain = (avg_gain * static_cast<double>(n - 1) + std::max(change, 0.0)) /
                   static_cast<double>(n);
        avg_loss = (avg_loss * static_cast<double>(n - 1) + std::max(-change, 0.0)) /
                   static_cast<double>(n);
        out.values[t] = rsi_value(avg_gain, avg_loss);
    }
    return out;
}

MacdResult macd(const IndicatorSeries& p, std::size_t fast, std::size_t slow,
                std::size_t signal) {
    if (fast < 1 || slow < 1 || signal < 1 || fast >= slow) {
        fail("InvalidSpans", "macd requires 1 <= fast < slow and signal >= 1");
    }
    IndicatorSeries fast_ema = ema(p, fast);
    IndicatorSeries slow_ema = ema(p, slow);

    MacdResult result;
    result.macd_line = blank_like(p.dates, p.warmup);
    for (std::size_t t = p.warmup; t < p.size(); ++t) {
        result.macd_line.values[t] = fast_ema.values[t] - slow_ema.values[t];
    }
    result.signal_line = ema(result.macd_line, signal);
    result.histogram = blank_like(p.dates, p.warmup);
    for (std::size_t t = p.warmup; t < p.size(); ++t) {
        result.histogram.values[t] = result.macd_line.values[t] - result.signal_line.values[t];
    }
    return result;
}

SwingResult swing_extremes(const IndicatorSeries& p, std::size_t lookback) {
    if (lookback < 2) {
        fail("WindowExceedsSeries", "swing lookback must be >= 2");
    }
    require_window(p.size() - std::min(p.size(), p.warmup), lookback, "swing_extremes");

    std::size_t warmup = p.warmup + lookback - 1;
    SwingResult result;
    result.high = blank_like(p.dates, warmup);
    result.low = blank_like(p.dates, warmup);
    for (std::size_t t = warmup; t < p.size(); ++t) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = t + 1 - lookback; i <= t; ++i) {
            hi = std::max(hi, p.values[i]);
            lo = std::min(lo, p.values[i]);
        }
        result.high.values[t] = hi;
        result.low.values[t] = lo;
    }
    return result;
}

double fib_level(double swing_low, double swing_high, double ratio) {
    if (swing_high < swing_low) {
        fail("InvertedSwing", "swing high " + std::to_string(swing_high) +
                                  " below swing low " + std::to_string(swing_low));
    }
    return swing_high - ratio * (swing_high - swing_low);
}

std::array<double, 5> fib_levels(double swing_low, double swing_high) {
    std::array<double, 5> levels{};
    for (std::size_t i = 0; i < kFibRatios.size(); ++i) {
        levels[i] = fib_level(swing_low, swing_high, kFibRatios[i]);
    }
    return levels;
}

IndicatorSeries fib_series(const SwingResult& swings, double ratio) {
    IndicatorSeries out = blank_like(swings.high.dates, swings.high.warmup);
    for (std::size_t t = out.warmup; t < out.size(); ++t) {
        out.values[t] = fib_level(swings.low.values[t], swings.high.values[t], ratio);
    }
    return out;
}

}  // namespace regimekit::indicators
