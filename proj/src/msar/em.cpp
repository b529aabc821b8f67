#include "regimekit/msar/em.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "regimekit/common/error.h"
#include "regimekit/common/log.h"
#include "regimekit/msar/filter.h"

namespace regimekit::msar {

namespace {

constexpr double kMinRegimeWeight = 1e-6;

struct EmRun {
    FittedModel model;
    bool degenerate = false;
};

double sample_variance(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) {
        acc += (v - mean) * (v - mean);
    }
    return acc / static_cast<double>(values.size());
}

TransitionMatrix diagonal_transitions(int k, double stay) {
    TransitionMatrix trans;
    trans.p.assign(k, std::vector<double>(k, (1.0 - stay) / (k - 1)));
    for (int i = 0; i < k; ++i) {
        trans.p[i][i] = stay;
    }
    return trans;
}

// Weighted least squares of y_t on (1, y_{t-1}) restricted to the terms the
// flags enable; returns (mu, phi).
std::pair<double, double> weighted_ar_fit(const std::vector<double>& y, std::size_t t_start,
                                          const std::vector<std::vector<double>>& w, int j,
                                          bool estimate_mean, bool estimate_ar) {
    if (!estimate_mean && !estimate_ar) {
        return {0.0, 0.0};
    }
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t t = t_start; t < y.size(); ++t) {
        double x = t == 0 ? 0.0 : y[t - 1];
        double weight = w[t][j];
        sw += weight;
        sx += weight * x;
        sy += weight * y[t];
        sxx += weight * x * x;
        sxy += weight * x * y[t];
    }
    if (estimate_mean && !estimate_ar) {
        return {sw > 0.0 ? sy / sw : 0.0, 0.0};
    }
    if (!estimate_mean && estimate_ar) {
        double phi = sxx > 0.0 ? sxy / sxx : 0.0;
        return {0.0, std::clamp(phi, -0.999, 0.999)};
    }
    double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-300) {
        return {sw > 0.0 ? sy / sw : 0.0, 0.0};
    }
    double mu = (sy * sxx - sx * sxy) / det;
    double phi = (sw * sxy - sx * sy) / det;
    return {mu, std::clamp(phi, -0.999, 0.999)};
}

EmRun run_em(const data::ReturnSeries& y, RegimeModelSpec spec, TransitionMatrix trans,
             const FitOptions& opts, double variance_floor) {
    const int k = spec.k;
    const std::size_t T = y.values.size();
    const FirstObs first = opts.estimate_ar ? FirstObs::Condition : FirstObs::Emit;
    const std::size_t t_start = opts.estimate_ar ? 1 : 0;

    EmRun run;
    std::vector<double> init = trans.ergodic();

    FilterResult filter;
    std::vector<std::vector<double>> smoothed;
    double prev_ll = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int iter = 0;

    for (; iter < opts.max_iter; ++iter) {
        filter = hamilton_filter(y, spec, trans, init, first);
        smoothed = kim_smoother(filter.filtered, trans);
        run.model.loglik_trace.push_back(filter.loglik);

        if (iter > 0 && filter.loglik - prev_ll < opts.tol) {
            converged = true;
            ++iter;
            break;
        }
        prev_ll = filter.loglik;
        if (iter == opts.max_iter - 1) {
            // Out of budget; keep the parameters the last E-step scored.
            ++iter;
            break;
        }

        // Expected transition counts xi[i][j] = sum_t Pr(S_t=i, S_{t+1}=j | Y).
        std::vector<std::vector<double>> xi(k, std::vector<double>(k, 0.0));
        for (std::size_t t = 0; t + 1 < T; ++t) {
            std::vector<double> predicted(k, 0.0);
            for (int j = 0; j < k; ++j) {
                for (int i = 0; i < k; ++i) {
                    predicted[j] += filter.filtered[t][i] * trans.p[i][j];
                }
            }
            for (int i = 0; i < k; ++i) {
                for (int j = 0; j < k; ++j) {
                    if (predicted[j] > 0.0) {
                        xi[i][j] += filter.filtered[t][i] * trans.p[i][j] * smoothed[t + 1][j] /
                                    predicted[j];
                    }
                }
            }
        }

        for (int j = 0; j < k; ++j) {
            double weight = 0.0;
            for (std::size_t t = 0; t < T; ++t) {
                weight += smoothed[t][j];
            }
            if (weight < kMinRegimeWeight) {
                run.degenerate = true;
                run.model.n_iter = iter + 1;
                return run;
            }
        }

        for (int i = 0; i < k; ++i) {
            double row = 0.0;
            for (int j = 0; j < k; ++j) {
                row += xi[i][j];
            }
            if (row <= 0.0) {
                run.degenerate = true;
                run.model.n_iter = iter + 1;
                return run;
            }
            for (int j = 0; j < k; ++j) {
                trans.p[i][j] = xi[i][j] / row;
            }
        }

        for (int j = 0; j < k; ++j) {
            auto [mu, phi] =
                weighted_ar_fit(y.values, t_start, smoothed, j, opts.estimate_mean,
                                opts.estimate_ar);
            spec.mu[j] = mu;
            spec.phi[j] = phi;
            double num = 0.0, den = 0.0;
            for (std::size_t t = t_start; t < T; ++t) {
                double x = t == 0 ? 0.0 : y.values[t - 1];
                double resid = y.values[t] - mu - phi * x;
                num += smoothed[t][j] * resid * resid;
                den += smoothed[t][j];
            }
            spec.sigma2[j] = std::max(den > 0.0 ? num / den : variance_floor, variance_floor);
        }

        init = smoothed[0];
    }

    run.model.spec = std::move(spec);
    run.model.trans = std::move(trans);
    run.model.loglik = filter.loglik;
    run.model.filtered = std::move(filter.filtered);
    run.model.smoothed = std::move(smoothed);
    run.model.n_iter = iter;
    run.model.converged = converged;
    return run;
}

}  // namespace

namespace {

void check_fit_preconditions(const data::ReturnSeries& y, int k, const FitOptions& opts) {
    if (y.values.size() < 50) {
        fail("SeriesTooShort", "EM needs at least 50 observations, got " +
                                   std::to_string(y.values.size()));
    }
    if (k < 2) {
        fail("InvalidSpec", "regime count must be >= 2");
    }
    if (!(opts.tol > 0.0)) {
        fail("InvalidSpec", "tol must be positive");
    }
    if (opts.n_restarts < 1 || opts.max_iter < 1) {
        fail("InvalidSpec", "n_restarts and max_iter must be >= 1");
    }
}

}  // namespace

FittedModel fit_em_from(const data::ReturnSeries& y, const RegimeModelSpec& start_spec,
                        const TransitionMatrix& start_trans, const FitOptions& opts) {
    check_fit_preconditions(y, start_spec.k, opts);
    start_spec.validate();
    start_trans.validate();
    const double var = sample_variance(y.values);
    const double variance_floor = std::max(var, 1e-30) * 1e-10;
    EmRun run = run_em(y, start_spec, start_trans, opts, variance_floor);
    if (run.degenerate) {
        fail("DegenerateRegime", "a regime's total smoothed weight fell below 1e-6");
    }
    return std::move(run.model);
}

FittedModel fit_em(const data::ReturnSeries& y, int k, const FitOptions& opts) {
    check_fit_preconditions(y, k, opts);

    const double var = std::max(sample_variance(y.values), 1e-30);
    const double variance_floor = var * 1e-10;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> jitter(0.5, 2.0);

    bool have_best = false;
    FittedModel best;
    int restarts_done = 0;

    for (int r = 0; r < opts.n_restarts; ++r) {
        RegimeModelSpec spec;
        spec.k = k;
        spec.mu.assign(k, 0.0);
        spec.phi.assign(k, 0.0);
        spec.sigma2.resize(k);
        for (int j = 0; j < k; ++j) {
            // Spread starting variances geometrically from 0.5x to 2x the
            // sample variance, then jitter on restarts.
            double g = k == 1 ? 1.0 : 0.5 * std::pow(4.0, static_cast<double>(j) / (k - 1));
            spec.sigma2[j] = var * g;
            if (r > 0) {
                spec.sigma2[j] *= jitter(rng);
            }
        }
        TransitionMatrix trans = diagonal_transitions(k, 0.95);

        EmRun run = run_em(y, std::move(spec), std::move(trans), opts, variance_floor);
        ++restarts_done;
        if (run.degenerate) {
            log::debug("fit_em: restart " + std::to_string(r) + " collapsed a regime");
            continue;
        }
        log::debug("fit_em: restart " + std::to_string(r) + " loglik " +
                   std::to_string(run.model.loglik) + " after " +
                   std::to_string(run.model.n_iter) + " iterations");
        if (!have_best || run.model.loglik > best.loglik) {
            best = std::move(run.model);
            have_best = true;
        }
    }

    if (!have_best) {
        fail("DegenerateRegime", "all " + std::to_string(restarts_done) +
                                     " starts collapsed a regime (smoothed weight < 1e-6)");
    }
    sort_regimes_by_variance(best);
    return best;
}

}  // namespace regimekit::msar
