#pragma once

#include <cstdint>

#include "regimekit/data/series.h"
#include "regimekit/msar/model.h"

namespace regimekit::msar {

struct FitOptions {
    int max_iter = 500;
    double tol = 1e-8;        // stop when the log-likelihood gain drops below this
    int n_restarts = 5;       // jittered restarts; best log-likelihood wins
    std::uint64_t seed = 0;
    bool estimate_mean = false;
    bool estimate_ar = false;
};

// Maximum-likelihood fit by EM. E-step: Hamilton filter + Kim smoother plus
// pairwise smoothed transition counts. M-step: closed-form updates for the
// variances and transition matrix; weighted least squares for mu/phi when
// their flags are set. The first start uses regime variances at (0.5x, 2x)
// the sample variance and 0.95 diagonal transitions; restarts jitter the
// variances multiplicatively by U(0.5, 2). Regimes come back sorted
// ascending by variance.
//
// Throws DegenerateRegime when every restart collapses a regime (total
// smoothed weight < 1e-6). Hitting max_iter flags converged = false on the
// result instead of throwing.
FittedModel fit_em(const data::ReturnSeries& y, int k = 2, const FitOptions& opts = {});

// Single EM run from an explicit start (no restarts, no final regime
// sorting). Useful for warm starts and for studying the estimator itself:
// a start with equal variances and uniform transitions is a symmetric fixed
// point the iteration cannot leave, which is why fit_em jitters restarts.
FittedModel fit_em_from(const data::ReturnSeries& y, const RegimeModelSpec& start_spec,
                        const TransitionMatrix& start_trans, const FitOptions& opts = {});

}  // namespace regimekit::msar
