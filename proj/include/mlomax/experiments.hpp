#pragma once

// Repeated-sampling replication harness: simulate data from a known model,
// fit it under several priors, and score the posterior means and 95% intervals.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mlomax/mcmc.hpp"
#include "mlomax/posterior.hpp"

namespace mlomax {

struct ScenarioSpec {
    std::string name = "scenario";
    Model model = Model::weibull;
    Vector truth; ///< model parameter layout
    int n = 30;
    int replicates = 100;
    std::vector<PriorChoice> priors;
    ChainConfig chain = short_chain_preset();
    std::uint64_t seed = 1729;
    int threads = 0;                        ///< 0: hardware concurrency
    double covariate_sd = 3.1622776601683795; ///< linreg covariates ~ N(0, covariate_sd^2)

    void validate() const;
};

struct MetricRow {
    std::string scenario;
    std::string prior;
    std::string parameter;
    double truth = 0.0;
    double rmse = 0.0;     ///< relative root mean squared error of the posterior mean
    double coverage = 0.0; ///< share of 95% intervals containing the truth
    double width = 0.0;    ///< mean interval width
};

struct MetricsTable {
    std::vector<MetricRow> rows;
    int replicates_used = 0;
    int failures = 0;

    /// Throws std::out_of_range if no row matches.
    const MetricRow& at(const std::string& prior, const std::string& parameter) const;
};

struct Interval {
    double lo;
    double hi;
};

/// sqrt(mean((estimate - truth)^2)) / |truth|.
double relative_rmse(std::span<const double> estimates, double truth);

/// Fraction of closed intervals containing the truth.
double coverage(std::span<const Interval> intervals, double truth);

/// One simulated dataset of size n from the scenario's true model.
Dataset simulate_dataset(const ScenarioSpec& spec, std::uint64_t seed);

/// Runs every replicate under every prior. Replicate r uses the stream
/// derive_seed(seed, r); results do not depend on the thread count. A
/// replicate whose chain fails to start is dropped when at most 1% of
/// replicates fail; otherwise the scenario throws std::runtime_error.
MetricsTable run_scenario(const ScenarioSpec& spec);

/// Embedded datasets: "breakdown34kv" (19 breakdown times of an insulating fluid at 34 kV).
std::vector<double> builtin_dataset(const std::string& name);

/// Scenario from its JSON description; nlohmann parse errors carry line numbers.
ScenarioSpec parse_scenario(const std::string& json_text);

/// Paper-scale settings: 250 replicates and the 100000/10000/50 chain.
void apply_full_scale(ScenarioSpec& spec);

std::string metrics_to_csv(const MetricsTable& table);
std::string metrics_to_text(const MetricsTable& table);

} // namespace mlomax
