#include "mlomax/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace mlomax {

namespace {

struct ReplicateResult {
    bool ok = false;
    std::string error;
    // [prior][parameter]
    std::vector<std::vector<double>> means;
    std::vector<std::vector<Interval>> intervals;
};

double positive_uniform(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double u = 0.0;
    while (u == 0.0) u = unif(rng);
    return u;
}

ReplicateResult run_replicate(const ScenarioSpec& spec, int r) {
    ReplicateResult out;
    const std::uint64_t replicate_seed = derive_seed(spec.seed, static_cast<std::uint64_t>(r));
    try {
        const Dataset data = simulate_dataset(spec, replicate_seed);
        for (std::size_t j = 0; j < spec.priors.size(); ++j) {
            ChainConfig config = spec.chain;
            config.seed = derive_seed(replicate_seed, j + 1);
            const ChainOutput chain = fit(spec.model, spec.priors[j], data, config);
            const auto summary = summarize(chain);
            std::vector<double> means;
            std::vector<Interval> intervals;
            for (const auto& s : summary) {
                means.push_back(s.mean);
                intervals.push_back({s.lower, s.upper});
            }
            out.means.push_back(std::move(means));
            out.intervals.push_back(std::move(intervals));
        }
        out.ok = true;
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

} // namespace

void ScenarioSpec::validate() const {
    if (replicates < 1) throw std::invalid_argument("ScenarioSpec: replicates must be at least 1");
    if (n < 2) throw std::invalid_argument("ScenarioSpec: n must be at least 2");
    if (priors.empty()) throw std::invalid_argument("ScenarioSpec: at least one prior required");
    switch (model) {
    case Model::weibull:
        if (truth.size() != 2 || !(truth.array() > 0.0).all()) {
            throw std::invalid_argument("ScenarioSpec: weibull truth must be positive (theta, beta)");
        }
        break;
    case Model::dagum:
        if (truth.size() != 3 || !(truth.array() > 0.0).all()) {
            throw std::invalid_argument("ScenarioSpec: dagum truth must be positive (a, b, p)");
        }
        break;
    case Model::linreg:
        if (truth.size() < 3 || !(truth(truth.size() - 1) > 0.0)) {
            throw std::invalid_argument("ScenarioSpec: linreg truth needs coefficients and positive sigma2");
        }
        if (!(covariate_sd > 0.0)) throw std::invalid_argument("ScenarioSpec: covariate_sd must be positive");
        break;
    }
}

const MetricRow& MetricsTable::at(const std::string& prior, const std::string& parameter) const {
    for (const auto& row : rows) {
        if (row.prior == prior && row.parameter == parameter) return row;
    }
    throw std::out_of_range("MetricsTable: no row for prior '" + prior + "' and parameter '" + parameter + "'");
}

double relative_rmse(std::span<const double> estimates, double truth) {
    if (truth == 0.0) throw std::invalid_argument("relative_rmse: truth must be nonzero");
    if (estimates.empty()) throw std::invalid_argument("relative_rmse: no estimates");
    double sum = 0.0;
    for (double e : estimates) sum += (e - truth) * (e - truth);
    return std::sqrt(sum / static_cast<double>(estimates.size())) / std::abs(truth);
}

double coverage(std::span<const Interval> intervals, double truth) {
    if (intervals.empty()) throw std::invalid_argument("coverage: no intervals");
    std::size_t hits = 0;
    for (const auto& iv : intervals) {
        if (!(iv.lo <= iv.hi)) throw std::invalid_argument("coverage: malformed interval");
        if (iv.lo <= truth && truth <= iv.hi) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(intervals.size());
}

Dataset simulate_dataset(const ScenarioSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Dataset data;
    switch (spec.model) {
    case Model::weibull: {
        const WeibullParams params{spec.truth(0), spec.truth(1)};
        data.values.resize(spec.n);
        for (int i = 0; i < spec.n; ++i) data.values(i) = weibull_quantile_sample(params, positive_uniform(rng));
        break;
    }
    case Model::dagum: {
        const DagumParams params{spec.truth(0), spec.truth(1), spec.truth(2)};
        data.values.resize(spec.n);
        for (int i = 0; i < spec.n; ++i) data.values(i) = dagum_quantile_sample(params, positive_uniform(rng));
        break;
    }
    case Model::linreg: {
        const Eigen::Index p = spec.truth.size() - 2;
        const double sigma = std::sqrt(spec.truth(spec.truth.size() - 1));
        std::normal_distribution<double> normal(0.0, 1.0);
        data.X.resize(spec.n, p);
        data.y.resize(spec.n);
        for (int i = 0; i < spec.n; ++i) {
            for (Eigen::Index j = 0; j < p; ++j) data.X(i, j) = spec.covariate_sd * normal(rng);
        }
        for (int i = 0; i < spec.n; ++i) {
            data.y(i) = spec.truth(0) + data.X.row(i).dot(spec.truth.segment(1, p)) + sigma * normal(rng);
        }
        break;
    }
    }
    return data;
}

MetricsTable run_scenario(const ScenarioSpec& spec) {
    spec.validate();
    std::vector<ReplicateResult> results(static_cast<std::size_t>(spec.replicates));
    const int threads = std::max(
        1, std::min(spec.replicates, spec.threads > 0 ? spec.threads
                                                      : static_cast<int>(std::thread::hardware_concurrency())));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < spec.replicates; r = next++) {
            results[static_cast<std::size_t>(r)] = run_replicate(spec, r);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    MetricsTable table;
    std::string first_error;
    for (const auto& r : results) {
        if (r.ok) {
            ++table.replicates_used;
        } else {
            if (first_error.empty()) first_error = r.error;
            ++table.failures;
        }
    }
    if (table.failures * 100 > spec.replicates || table.replicates_used == 0) {
        throw std::runtime_error("run_scenario: " + std::to_string(table.failures) + " of " +
                                 std::to_string(spec.replicates) + " replicates failed; first error: " + first_error);
    }

    const int covariates = spec.model == Model::linreg ? static_cast<int>(spec.truth.size()) - 2 : 0;
    const auto names = parameter_names(spec.model, covariates);
    for (std::size_t j = 0; j < spec.priors.size(); ++j) {
        for (std::size_t k = 0; k < names.size(); ++k) {
            std::vector<double> means;
            std::vector<Interval> intervals;
            double width = 0.0;
            for (const auto& r : results) {
                if (!r.ok) continue;
                means.push_back(r.means[j][k]);
                intervals.push_back(r.intervals[j][k]);
                width += r.intervals[j][k].hi - r.intervals[j][k].lo;
            }
            const double truth = spec.truth(static_cast<Eigen::Index>(k));
            table.rows.push_back({spec.name, spec.priors[j].label(), names[k], truth, relative_rmse(means, truth),
                                  coverage(intervals, truth), width / static_cast<double>(intervals.size())});
        }
    }
    return table;
}

std::vector<double> builtin_dataset(const std::string& name) {
    if (name == "breakdown34kv") {
        return {0.96, 4.15, 0.19, 0.78, 8.01,  31.75, 7.35, 6.50,  8.27,  33.91,
                32.52, 3.16, 4.85, 2.78, 4.67, 1.31,  12.06, 36.71, 72.89};
    }
    throw std::invalid_argument("unknown builtin dataset '" + name + "'");
}

namespace {

PriorChoice prior_from_json(const nlohmann::json& j) {
    PriorChoice choice;
    if (j.is_string()) {
        choice.kind = j.get<std::string>();
        return choice;
    }
    choice.kind = j.at("kind").get<std::string>();
    choice.lomax_k = j.value("k", choice.lomax_k);
    choice.lomax_a = j.value("a", choice.lomax_a);
    choice.gamma_shape = j.value("gamma_shape", choice.gamma_shape);
    choice.gamma_rate = j.value("gamma_rate", choice.gamma_rate);
    choice.c = j.value("c", choice.c);
    choice.g = j.value("g", choice.g);
    return choice;
}

} // namespace

ScenarioSpec parse_scenario(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    ScenarioSpec spec;
    try {
        spec.name = j.value("name", spec.name);
        spec.model = parse_model(j.at("model").get<std::string>());
        const auto& truth = j.at("truth");
        std::vector<std::string> names;
        if (spec.model == Model::linreg) {
            int coefficients = 0;
            while (truth.contains("beta" + std::to_string(coefficients))) ++coefficients;
            if (coefficients < 2) throw std::invalid_argument("linreg truth needs beta0 and at least beta1");
            names = parameter_names(Model::linreg, coefficients - 1);
        } else {
            names = parameter_names(spec.model);
        }
        spec.truth.resize(static_cast<Eigen::Index>(names.size()));
        for (std::size_t k = 0; k < names.size(); ++k) {
            spec.truth(static_cast<Eigen::Index>(k)) = truth.at(names[k]).get<double>();
        }
        spec.n = j.value("n", spec.n);
        spec.replicates = j.value("replicates", spec.replicates);
        spec.seed = j.value("seed", spec.seed);
        spec.threads = j.value("threads", spec.threads);
        spec.covariate_sd = j.value("covariate_sd", spec.covariate_sd);
        for (const auto& p : j.at("priors")) spec.priors.push_back(prior_from_json(p));
        if (j.contains("chain")) {
            const auto& c = j.at("chain");
            const std::string preset = c.value("preset", "short");
            if (preset == "full") {
                spec.chain = full_chain_preset();
            } else if (preset != "short") {
                throw std::invalid_argument("unknown chain preset '" + preset + "'");
            }
            spec.chain.iterations = c.value("iterations", spec.chain.iterations);
            spec.chain.burn_in = c.value("burn_in", spec.chain.burn_in);
            spec.chain.thin = c.value("thin", spec.chain.thin);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("scenario: ") + e.what());
    }
    spec.validate();
    return spec;
}

void apply_full_scale(ScenarioSpec& spec) {
    spec.replicates = 250;
    spec.chain = full_chain_preset();
}

std::string metrics_to_csv(const MetricsTable& table) {
    std::ostringstream out;
    out.precision(17);
    out << "scenario,prior,parameter,rmse,coverage,width\n";
    for (const auto& r : table.rows) {
        out << r.scenario << ',' << r.prior << ',' << r.parameter << ',' << r.rmse << ',' << r.coverage << ','
            << r.width << '\n';
    }
    return out.str();
}

std::string metrics_to_text(const MetricsTable& table) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "prior" << std::setw(10) << "parameter" << std::right << std::setw(12)
        << "truth" << std::setw(12) << "rel.rmse" << std::setw(10) << "coverage" << std::setw(12) << "width"
        << '\n';
    out << std::fixed;
    for (const auto& r : table.rows) {
        out << std::left << std::setw(24) << r.prior << std::setw(10) << r.parameter << std::right
            << std::setprecision(4) << std::setw(12) << r.truth << std::setw(12) << r.rmse << std::setprecision(3)
            << std::setw(10) << r.coverage << std::setprecision(4) << std::setw(12) << r.width << '\n';
    }
    out << "replicates used: " << table.replicates_used << ", failed: " << table.failures << '\n';
    return out.str();
}

} // namespace mlomax
