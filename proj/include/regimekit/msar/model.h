#pragma once

#include <string>
#include <vector>

#include "regimekit/common/date.h"

namespace regimekit::msar {

// Parameters of y_t = mu[s] + phi[s] * y_{t-1} + sqrt(sigma2[s]) * eps_t,
// eps_t iid standard normal, s the hidden regime. The replication target is
// the pure variance-switching case (mu = phi = 0), but k and the mean/AR
// terms stay general.
struct RegimeModelSpec {
    int k = 2;
    std::vector<double> mu;
    std::vector<double> phi;
    std::vector<double> sigma2;

    static RegimeModelSpec variance_only(std::vector<double> sigma2);

    bool has_ar() const;

    // sigma2[j] > 0, |phi[j]| < 1, k >= 2, all vectors of length k.
    void validate() const;
};

// Row-stochastic: p[i][j] = Pr(S_t = j | S_{t-1} = i). Table-style output
// `p[0->0]` therefore reads p[0][0].
struct TransitionMatrix {
    std::vector<std::vector<double>> p;

    int k() const { return static_cast<int>(p.size()); }

    // Every entry in [0,1], every row sums to 1 within 1e-12.
    void validate() const;

    // Stationary distribution pi solving pi = pi * P.
    std::vector<double> ergodic() const;
};

struct FittedModel {
    RegimeModelSpec spec;
    TransitionMatrix trans;
    double loglik = 0.0;
    std::vector<std::vector<double>> filtered;  // per-date Pr(S_t | y_1..y_t)
    std::vector<std::vector<double>> smoothed;  // per-date Pr(S_t | y_1..y_T)
    int n_iter = 0;
    bool converged = true;
    std::vector<double> loglik_trace;  // per-iteration log-likelihood
};

// Reorders regimes ascending by variance (spec, transition rows/columns and
// probability columns permuted consistently).
void sort_regimes_by_variance(FittedModel& model);

// duration[i] = 1 / (1 - p[i][i]); an absorbing state reports +infinity.
std::vector<double> expected_durations(const TransitionMatrix& trans);

enum class VarianceLabel { Low, High };

enum class ProbMode { Smoothed, Filtered };

struct VarianceSeries {
    std::vector<Date> dates;
    std::vector<VarianceLabel> labels;
};

// Labels a date HighVar when the top-variance regime's probability (per the
// chosen mode) strictly exceeds `threshold`. Requires regimes already sorted
// by variance.
std::vector<VarianceLabel> classify_variance(const FittedModel& model,
                                             ProbMode mode = ProbMode::Smoothed,
                                             double threshold = 0.5);

std::string to_string(VarianceLabel label);

}  // namespace regimekit::msar
