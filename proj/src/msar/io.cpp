#include "regimekit/msar/io.h"

#include <fstream>

#include <json.hpp>

#include "regimekit/common/csv.h"
#include "regimekit/common/error.h"

namespace regimekit::msar {

using nlohmann::json;

std::string model_to_json(const FittedModel& model) {
    json j;
    j["k"] = model.spec.k;
    j["mu"] = model.spec.mu;
    j["phi"] = model.spec.phi;
    j["sigma2"] = model.spec.sigma2;
    j["trans"] = model.trans.p;
    j["loglik"] = model.loglik;
    j["n_iter"] = model.n_iter;
    return j.dump(2) + "\n";
}

void write_model_json(const std::string& path, const FittedModel& model) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << model_to_json(model);
}

FittedModel read_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail("FileNotFound", "cannot open '" + path + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("InvalidModelJson", "'" + path + "': " + e.what());
    }
    FittedModel model;
    try {
        model.spec.k = j.at("k").get<int>();
        model.spec.mu = j.at("mu").get<std::vector<double>>();
        model.spec.phi = j.at("phi").get<std::vector<double>>();
        model.spec.sigma2 = j.at("sigma2").get<std::vector<double>>();
        model.trans.p = j.at("trans").get<std::vector<std::vector<double>>>();
        model.loglik = j.at("loglik").get<double>();
        model.n_iter = j.at("n_iter").get<int>();
    } catch (const json::exception& e) {
        fail("InvalidModelJson", "'" + path + "': " + e.what());
    }
    model.spec.validate();
    model.trans.validate();
    return model;
}

void write_prob_csv(const std::string& path, const std::vector<Date>& dates,
                    const std::vector<std::vector<double>>& probs) {
    if (dates.size() != probs.size()) {
        fail("LengthMismatch", "dates and probability rows differ in length");
    }
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    const std::size_t k = probs.empty() ? 0 : probs.front().size();
    out << "date";
    for (std::size_t j = 0; j < k; ++j) {
        out << ",p_regime" << j;
    }
    out << '\n';
    for (std::size_t t = 0; t < dates.size(); ++t) {
        out << dates[t].to_string();
        for (double p : probs[t]) {
            out << ',' << csv::format_double(p);
        }
        out << '\n';
    }
}

ProbSeries read_prob_csv(const std::string& path) {
    csv::Table table = csv::read_table(path);
    if (table.header.size() < 2 || table.header[0] != "date") {
        fail("InvalidProbCsv", "'" + path + "' must start with a date column");
    }
    ProbSeries series;
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            fail("InvalidProbCsv", "'" + path + "' has a ragged row");
        }
        series.dates.push_back(Date::parse(row[0]));
        std::vector<double> probs;
        for (std::size_t c = 1; c < row.size(); ++c) {
            probs.push_back(std::stod(row[c]));
        }
        series.probs.push_back(std::move(probs));
    }
    return series;
}

}  // namespace regimekit::msar
