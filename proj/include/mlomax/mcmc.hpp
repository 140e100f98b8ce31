#pragma once

// Metropolis-within-Gibbs sampling of a PosteriorTarget.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mlomax/numerics.hpp"

namespace mlomax {

enum class Support { real_line, positive };

struct PosteriorTarget {
    /// Log posterior up to a constant. May return -infinity, or throw
    /// std::domain_error, outside the support.
    std::function<double(const Vector&)> log_density;
    std::vector<Support> support;
    std::vector<std::string> names;

    int dim() const { return static_cast<int>(support.size()); }
    bool in_support(const Vector& x) const;
};

struct ChainConfig {
    int iterations = 100000;
    int burn_in = 10000;
    int thin = 50;
    Vector initial;
    Vector steps; ///< proposal scale per coordinate; log scale for positive ones
    bool adapt = true;
    int adapt_interval = 500;
    std::uint64_t seed = 1729;

    void validate(int dim) const;
};

/// Desk-scale preset used by the replication harness.
ChainConfig short_chain_preset();
/// Preset matching the regression study settings (100000 / 10000 / 50).
ChainConfig full_chain_preset();

struct ChainOutput {
    Matrix draws;          ///< retained draws, one row per kept iteration
    Vector acceptance;     ///< post-burn-in acceptance rate per coordinate
    Vector steps;          ///< step sizes used after burn-in
    std::vector<std::string> names;
};

/// Number of retained draws, floor((iterations - burn_in) / thin).
int retained_count(const ChainConfig& config);

/// Random-walk Metropolis sweeps, one coordinate at a time. Positive
/// coordinates are proposed on the log scale with the Jacobian included in
/// the acceptance ratio. During burn-in the steps are adapted every
/// adapt_interval sweeps; afterwards they are frozen. Throws
/// std::invalid_argument if the initial log posterior is not finite.
ChainOutput run_chain(const PosteriorTarget& target, const ChainConfig& config);

/// One adaptation step: x1.2 when the window acceptance exceeds 0.5, /1.2 when
/// it falls below 0.2, unchanged otherwise.
Vector adapt_steps(const Vector& steps, const Vector& window_acceptance);

struct CoordinateSummary {
    std::string name;
    double mean = 0.0;
    double median = 0.0;
    double variance = 0.0;
    double lower = 0.0; ///< 2.5% quantile
    double upper = 0.0; ///< 97.5% quantile
    double ess = 0.0;   ///< effective sample size estimate
};

/// Per-coordinate summaries; quantiles interpolate linearly between order
/// statistics. Requires at least 100 draws.
std::vector<CoordinateSummary> summarize(const Matrix& draws, const std::vector<std::string>& names);
std::vector<CoordinateSummary> summarize(const ChainOutput& chain);

/// Effective sample size from the initial positive sequence of
/// autocorrelation pairs.
double effective_sample_size(const Eigen::Ref<const Vector>& series);

} // namespace mlomax
