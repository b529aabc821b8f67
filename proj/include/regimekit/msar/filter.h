#pragma once

#include <optional>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/msar/model.h"

namespace regimekit::msar {

struct FilterResult {
    std::vector<std::vector<double>> filtered;  // Pr(S_t = j | y_1..y_t)
    double loglik = 0.0;
};

// What to do with the first observation, whose AR predecessor y_0 does not
// exist. Auto resolves to Condition when the spec has a nonzero AR term and
// to Emit otherwise.
enum class FirstObs { Auto, Emit, Condition };

// Forward (Hamilton) recursion. `init` is the t=1 state prior; nullopt uses
// the ergodic distribution of `trans`.
//
// Emission at t is N(y_t; mu_j + phi_j * y_{t-1}, sigma2_j). Under
// FirstObs::Condition the first observation is conditioned on: filtered_1 =
// init and the likelihood starts at t=2. Under Emit all T observations
// contribute. Densities are evaluated in log space and each step
// renormalized, so long series do not underflow.
FilterResult hamilton_filter(const data::ReturnSeries& y, const RegimeModelSpec& spec,
                             const TransitionMatrix& trans,
                             const std::optional<std::vector<double>>& init = std::nullopt,
                             FirstObs first = FirstObs::Auto);

// Backward (Kim) recursion upgrading filtered to full-sample probabilities:
// smoothed_T = filtered_T and
// smoothed_t[i] = filtered_t[i] * sum_j trans[i][j] * smoothed_{t+1}[j] / predicted_{t+1}[j].
std::vector<std::vector<double>> kim_smoother(const std::vector<std::vector<double>>& filtered,
                                              const TransitionMatrix& trans);

}  // namespace regimekit::msar
