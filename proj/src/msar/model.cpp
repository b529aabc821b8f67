#include "regimekit/msar/model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "regimekit/common/error.h"

namespace regimekit::msar {

RegimeModelSpec RegimeModelSpec::variance_only(std::vector<double> sigma2) {
    RegimeModelSpec spec;
    spec.k = static_cast<int>(sigma2.size());
    spec.mu.assign(spec.k, 0.0);
    spec.phi.assign(spec.k, 0.0);
    spec.sigma2 = std::move(sigma2);
    spec.validate();
    return spec;
}

bool RegimeModelSpec::has_ar() const {
    return std::any_of(phi.begin(), phi.end(), [](double v) { return v != 0.0; });
}

void RegimeModelSpec::validate() const {
    if (k < 2) {
        fail("InvalidSpec", "regime count must be >= 2, got " + std::to_string(k));
    }
    auto check_len = [&](const std::vector<double>& v, const char* name) {
        if (static_cast<int>(v.size()) != k) {
            fail("InvalidSpec", std::string(name) + " must have length k");
        }
    };
    check_len(mu, "mu");
    check_len(phi, "phi");
    check_len(sigma2, "sigma2");
    for (int j = 0; j < k; ++j) {
        if (!(sigma2[j] > 0.0) || !std::isfinite(sigma2[j])) {
            fail("InvalidSpec", "sigma2[" + std::to_string(j) + "] must be positive");
        }
        if (!(std::abs(phi[j]) < 1.0)) {
            fail("InvalidSpec", "|phi[" + std::to_string(j) + "]| must be < 1");
        }
        if (!std::isfinite(mu[j])) {
            fail("InvalidSpec", "mu[" + std::to_string(j) + "] must be finite");
        }
    }
}

void TransitionMatrix::validate() const {
    if (p.size() < 2) {
        fail("InvalidTransition", "need at least 2 regimes");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i].size() != p.size()) {
            fail("InvalidTransition", "matrix must be square");
        }
        double row_sum = 0.0;
        for (double value : p[i]) {
            if (!(value >= 0.0 && value <= 1.0)) {
                fail("InvalidTransition", "entries must lie in [0,1]");
            }
            row_sum += value;
        }
        if (std::abs(row_sum - 1.0) > 1e-12) {
            fail("InvalidTransition",
                 "row " + std::to_string(i) + " sums to " + std::to_string(row_sum));
        }
    }
}

std::vector<double> TransitionMatrix::ergodic() const {
    validate();
    const int n = k();
    // Solve pi (P - I) = 0 with sum(pi) = 1: transpose to (P^T - I) pi = 0 and
    // replace the last equation by the normalization row.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            a[i][j] = p[j][i] - (i == j ? 1.0 : 0.0);
        }
    }
    for (int j = 0; j < n; ++j) {
        a[n - 1][j] = 1.0;
    }
    a[n - 1][n] = 1.0;

    // Gaussian elimination with partial pivoting; k is tiny.
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) {
                pivot = row;
            }
        }
        std::swap(a[col], a[pivot]);
        if (std::abs(a[col][col]) < 1e-14) {
            fail("InvalidTransition", "transition matrix has no unique stationary distribution");
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) {
                continue;
            }
            double factor = a[row][col] / a[col][col];
            for (int j = col; j <= n; ++j) {
                a[row][j] -= factor * a[col][j];
            }
        }
    }
    std::vector<double> pi(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        pi[i] = std::max(0.0, a[i][n] / a[i][i]);
        total += pi[i];
    }
    for (double& value : pi) {
        value /= total;
    }
    return pi;
}

void sort_regimes_by_variance(FittedModel& model) {
    const int k = model.spec.k;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return model.spec.sigma2[a] < model.spec.sigma2[b];
    });

    auto permute = [&](const std::vector<double>& v) {
        std::vector<double> out(k);
        for (int j = 0; j < k; ++j) {
            out[j] = v[order[j]];
        }
        return out;
    };
    model.spec.mu = permute(model.spec.mu);
    model.spec.phi = permute(model.spec.phi);
    model.spec.sigma2 = permute(model.spec.sigma2);

    std::vector<std::vector<double>> trans(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            trans[i][j] = model.trans.p[order[i]][order[j]];
        }
    }
    model.trans.p = std::move(trans);

    for (auto* probs : {&model.filtered, &model.smoothed}) {
        for (auto& row : *probs) {
            row = permute(row);
        }
    }
}

std::vector<double> expected_durations(const TransitionMatrix& trans) {
    trans.validate();
    std::vector<double> durations(trans.k());
    for (int i = 0; i < trans.k(); ++i) {
        double stay = trans.p[i][i];
        durations[i] = stay >= 1.0 ? std::numeric_limits<double>::infinity()
                                   : 1.0 / (1.0 - stay);
    }
    return durations;
}

std::vector<VarianceLabel> classify_variance(const FittedModel& model, ProbMode mode,
                                             double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        fail("InvalidThreshold", "threshold must lie in (0,1)");
    }
    const auto& probs = mode == ProbMode::Smoothed ? model.smoothed : model.filtered;
    const int high = model.spec.k - 1;  // regimes sorted ascending by variance
    std::vector<VarianceLabel> labels;
    labels.reserve(probs.size());
    for (const auto& row : probs) {
        labels.push_back(row[high] > threshold ? VarianceLabel::High : VarianceLabel::Low);
    }
    return labels;
}

std::string to_string(VarianceLabel label) {
    return label == VarianceLabel::Low ? "low" : "high";
}

}  // namespace regimekit::msar
