#pragma once

#include <string>
#include <vector>

#include "regimekit/common/date.h"
#include "regimekit/msar/model.h"

namespace regimekit::msar {

// JSON with keys {k, mu, phi, sigma2, trans, loglik, n_iter}.
std::string model_to_json(const FittedModel& model);
void write_model_json(const std::string& path, const FittedModel& model);

// Parses the same schema back into spec/trans/loglik/n_iter (the probability
// series are not part of the JSON contract).
FittedModel read_model_json(const std::string& path);

// CSV columns: date, p_regime0, p_regime1, ... one per regime.
void write_prob_csv(const std::string& path, const std::vector<Date>& dates,
                    const std::vector<std::vector<double>>& probs);

struct ProbSeries {
    std::vector<Date> dates;
    std::vector<std::vector<double>> probs;
};
ProbSeries read_prob_csv(const std::string& path);

}  // namespace regimekit::msar
