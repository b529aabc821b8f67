#pragma once

#include <cstdint>
#include <vector>

#include "regimekit/data/series.h"
#include "regimekit/msar/model.h"

namespace regimekit::msar {

struct Simulation {
    data::ReturnSeries returns;
    std::vector<int> true_states;
};

// Draws states from the Markov chain started at its ergodic distribution and
// emits y_t = mu[s] + phi[s] * y_{t-1} + sqrt(sigma2[s]) * eps_t (y_0 = 0).
// Deterministic for a fixed seed. Dates are consecutive calendar days from
// `start` so the output plugs into anything expecting a dated series.
Simulation simulate_msar(const RegimeModelSpec& spec, const TransitionMatrix& trans,
                         std::size_t T, std::uint64_t seed,
                         Date start = Date::from_ymd(2000, 1, 3));

}  // namespace regimekit::msar
