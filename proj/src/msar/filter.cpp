#include "regimekit/msar/filter.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regimekit/common/error.h"

namespace regimekit::msar {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

double log_normal_density(double y, double mean, double sigma2) {
    double diff = y - mean;
    return -0.5 * (kLog2Pi + std::log(sigma2) + diff * diff / sigma2);
}

std::vector<double> resolve_init(const std::optional<std::vector<double>>& init,
                                 const TransitionMatrix& trans) {
    if (!init.has_value()) {
        return trans.ergodic();
    }
    if (static_cast<int>(init->size()) != trans.k()) {
        fail("InvalidInit", "init vector has length " + std::to_string(init->size()) +
                                ", expected " + std::to_string(trans.k()));
    }
    double sum = 0.0;
    for (double value : *init) {
        if (!(value >= 0.0)) {
            fail("InvalidInit", "init probabilities must be non-negative");
        }
        sum += value;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        fail("InvalidInit", "init probabilities sum to " + std::to_string(sum));
    }
    return *init;
}

}  // namespace

FilterResult hamilton_filter(const data::ReturnSeries& y, const RegimeModelSpec& spec,
                             const TransitionMatrix& trans,
                             const std::optional<std::vector<double>>& init, FirstObs first) {
    spec.validate();
    trans.validate();
    if (y.values.empty()) {
        fail("SeriesTooShort", "cannot filter an empty return series");
    }
    if (trans.k() != spec.k) {
        fail("InvalidSpec", "transition matrix and spec disagree on regime count");
    }

    const int k = spec.k;
    const std::size_t T = y.values.size();
    const bool skip_first =
        first == FirstObs::Auto ? spec.has_ar() : first == FirstObs::Condition;

    FilterResult result;
    result.filtered.resize(T, std::vector<double>(k, 0.0));

    std::vector<double> prior = resolve_init(init, trans);
    std::vector<double> predicted(k);
    std::vector<double> log_dens(k);
    std::vector<double> weights(k);

    for (std::size_t t = 0; t < T; ++t) {
        if (t == 0) {
            predicted = prior;
            if (skip_first) {
                // y_1 is conditioned on: no emission update at t=1.
                result.filtered[0] = predicted;
                continue;
            }
        } else {
            for (int j = 0; j < k; ++j) {
                double sum = 0.0;
                for (int i = 0; i < k; ++i) {
                    sum += result.filtered[t - 1][i] * trans.p[i][j];
                }
                predicted[j] = sum;
            }
        }

        double y_prev = t == 0 ? 0.0 : y.values[t - 1];
        double max_log = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) {
            log_dens[j] = log_normal_density(y.values[t], spec.mu[j] + spec.phi[j] * y_prev,
                                             spec.sigma2[j]);
            if (predicted[j] > 0.0 && log_dens[j] > max_log) {
                max_log = log_dens[j];
            }
        }
        if (!std::isfinite(max_log)) {
            fail("DegenerateDensity", "all regime densities vanished at t=" + std::to_string(t));
        }

        double total = 0.0;
        for (int j = 0; j < k; ++j) {
            weights[j] = predicted[j] > 0.0 ? predicted[j] * std::exp(log_dens[j] - max_log) : 0.0;
            total += weights[j];
        }
        if (!(total > 0.0) || !std::isfinite(total)) {
            fail("DegenerateDensity", "all regime densities vanished at t=" + std::to_string(t));
        }
        for (int j = 0; j < k; ++j) {
            result.filtered[t][j] = weights[j] / total;
        }
        result.loglik += std::log(total) + max_log;
    }
    return result;
}

std::vector<std::vector<double>> kim_smoother(const std::vector<std::vector<double>>& filtered,
                                              const TransitionMatrix& trans) {
    trans.validate();
    if (filtered.empty()) {
        fail("SeriesTooShort", "cannot smooth an empty probability sequence");
    }
    const int k = trans.k();
    const std::size_t T = filtered.size();

    std::vector<std::vector<double>> smoothed(T, std::vector<double>(k, 0.0));
    smoothed[T - 1] = filtered[T - 1];

    for (std::size_t t = T - 1; t-- > 0;) {
        std::vector<double> predicted(k, 0.0);
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < k; ++i) {
                predicted[j] += filtered[t][i] * trans.p[i][j];
            }
        }
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            double carry = 0.0;
            for (int j = 0; j < k; ++j) {
                double share = trans.p[i][j] * smoothed[t + 1][j];
                if (share == 0.0) {
                    continue;
                }
                if (predicted[j] <= 0.0) {
                    fail("ZeroPredictedProbability",
                         "predicted probability of regime " + std::to_string(j) +
                             " vanished at t=" + std::to_string(t + 1));
                }
                carry += share / predicted[j];
            }
            smoothed[t][i] = filtered[t][i] * carry;
            total += smoothed[t][i];
        }
        // Renormalize to absorb accumulated rounding.
        if (!(total > 0.0)) {
            fail("ZeroPredictedProbability", "smoothed mass vanished at t=" + std::to_string(t));
        }
        for (int i = 0; i < k; ++i) {
            smoothed[t][i] /= total;
        }
    }
    return smoothed;
}

}  // namespace regimekit::msar
