#include "regimekit/signal/crossings.h"

#include <algorithm>
#include <cmath>

#include "regimekit/common/error.h"

namespace regimekit::signal {

std::string to_string(CrossKind kind) {
    return kind == CrossKind::CrossAbove ? "cross_above" : "cross_below";
}

std::vector<CrossEvent> detect_crossings(const indicators::IndicatorSeries& a,
                                         const indicators::IndicatorSeries& b,
                                         const std::string& subject,
                                         const regimes::RegimeSeries* labels) {
    if (a.size() != b.size() ||
        !std::equal(a.dates.begin(), a.dates.end(), b.dates.begin())) {
        fail("LengthMismatch", "crossing series must share their dates");
    }
    std::size_t start = std::max(a.warmup, b.warmup);
    if (start >= a.size()) {
        fail("NoOverlap", "series have no common defined range");
    }

    std::vector<CrossEvent> events;
    int last_side = 0;  // -1 below, +1 above, 0 unknown so far
    for (std::size_t t = start; t < a.size(); ++t) {
        double diff = a.values[t] - b.values[t];
        if (std::isnan(diff) || diff == 0.0) {
            continue;
        }
        int side = diff > 0.0 ? 1 : -1;
        if (last_side != 0 && side != last_side) {
            CrossEvent event;
            event.date = a.dates[t];
            event.index = t;
            event.kind = side > 0 ? CrossKind::CrossAbove : CrossKind::CrossBelow;
            event.subject = subject;
            if (labels != nullptr) {
                auto idx = labels->index_of(event.date);
                if (!idx.has_value()) {
                    last_side = side;
                    continue;  // outside the labeled range
                }
                event.regime = labels->regime[*idx];
            }
            events.push_back(std::move(event));
        }
        last_side = side;
    }
    return events;
}

std::vector<CrossEvent> detect_crossings(const indicators::IndicatorSeries& a, double threshold,
                                         const std::string& subject,
                                         const regimes::RegimeSeries* labels) {
    return detect_crossings(a, indicators::constant_series(a, threshold), subject, labels);
}

std::vector<ForwardPath> forward_paths(const std::vector<CrossEvent>& events,
                                       const data::ReturnSeries& returns,
                                       const regimes::RegimeSeries& labels,
                                       std::size_t horizon) {
    // Per-event cumulative paths, grouped by (subject, kind, regime).
    std::map<std::tuple<std::string, int, int>, std::vector<std::vector<double>>> groups;

    for (const CrossEvent& event : events) {
        if (!event.regime.has_value()) {
            continue;
        }
        auto ret_it = std::lower_bound(returns.dates.begin(), returns.dates.end(), event.date);
        std::size_t base = static_cast<std::size_t>(ret_it - returns.dates.begin());
        // Offset k consumes the k-th return strictly after the event date.
        if (ret_it != returns.dates.end() && *ret_it == event.date) {
            ++base;
        }

        std::vector<double> path;
        double growth = 1.0;
        double log_sum = 0.0;
        for (std::size_t k = 0; k < horizon && base + k < returns.size(); ++k) {
            Date date = returns.dates[base + k];
            auto label_idx = labels.index_of(date);
            if (!label_idx.has_value() || labels.regime[*label_idx] != *event.regime) {
                break;  // path truncates at the regime change
            }
            if (returns.kind == data::ReturnKind::Simple) {
                growth *= 1.0 + returns.values[base + k];
                path.push_back(growth - 1.0);
            } else {
                log_sum += returns.values[base + k];
                path.push_back(std::exp(log_sum) - 1.0);
            }
        }
        auto key = std::make_tuple(event.subject, static_cast<int>(event.kind),
                                   static_cast<int>(*event.regime));
        groups[key].push_back(std::move(path));
    }

    std::vector<ForwardPath> out;
    for (const auto& [key, paths] : groups) {
        ForwardPath fp;
        fp.subject = std::get<0>(key);
        fp.kind = static_cast<CrossKind>(std::get<1>(key));
        fp.regime = static_cast<regimes::RegimeLabel>(std::get<2>(key));
        fp.horizon = horizon;
        fp.total_events = paths.size();
        std::size_t longest = 0;
        for (const auto& path : paths) {
            longest = std::max(longest, path.size());
        }
        fp.mean_cum_return.assign(longest, 0.0);
        fp.n_events.assign(longest, 0);
        for (const auto& path : paths) {
            for (std::size_t k = 0; k < path.size(); ++k) {
                fp.mean_cum_return[k] += path[k];
                fp.n_events[k] += 1;
            }
        }
        for (std::size_t k = 0; k < longest; ++k) {
            fp.mean_cum_return[k] /= static_cast<double>(fp.n_events[k]);
        }
        out.push_back(std::move(fp));
    }
    return out;
}

}  // namespace regimekit::signal
