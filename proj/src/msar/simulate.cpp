#include "regimekit/msar/simulate.h"

#include <cmath>
#include <random>

#include "regimekit/common/error.h"

namespace regimekit::msar {

Simulation simulate_msar(const RegimeModelSpec& spec, const TransitionMatrix& trans,
                         std::size_t T, std::uint64_t seed, Date start) {
    spec.validate();
    trans.validate();
    if (trans.k() != spec.k) {
        fail("InvalidSpec", "transition matrix and spec disagree on regime count");
    }
    if (T < 1) {
        fail("InvalidSpec", "simulation length must be >= 1");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto draw_state = [&](const std::vector<double>& probs) {
        double u = uniform(rng);
        double acc = 0.0;
        for (std::size_t j = 0; j < probs.size(); ++j) {
            acc += probs[j];
            if (u < acc) {
                return static_cast<int>(j);
            }
        }
        return static_cast<int>(probs.size()) - 1;
    };

    Simulation sim;
    sim.returns.symbol = "simulated";
    sim.returns.kind = data::ReturnKind::Log;
    sim.returns.dates.reserve(T);
    sim.returns.values.reserve(T);
    sim.true_states.reserve(T);

    int state = draw_state(trans.ergodic());
    double y_prev = 0.0;
    Date date = start;
    for (std::size_t t = 0; t < T; ++t) {
        if (t > 0) {
            state = draw_state(trans.p[state]);
        }
        double y = spec.mu[state] + spec.phi[state] * y_prev +
                   std::sqrt(spec.sigma2[state]) * gauss(rng);
        sim.returns.dates.push_back(date);
        sim.returns.values.push_back(y);
        sim.true_states.push_back(state);
        y_prev = y;
        date = date.next();
    }
    return sim;
}

}  // namespace regimekit::msar
