#pragma once

// Log-penalty point estimators and their LASSO counterparts.
//
// In one dimension (unit-norm covariate, z = sum x_i y_i) the log penalty
// minimizes beta^2 - 2 beta z + 2 lambda log(1 + |beta|); the LASSO replaces
// log(1 + |beta|) by |beta|. A penalty (d+1) log(1 + |beta|) corresponds to
// lambda = (d+1)/2.

#include <cstdint>
#include <vector>

#include "mlomax/numerics.hpp"

namespace mlomax {

struct PenaltyProblem1D {
    double z = 0.0;
    double lambda = 1.0;
};

/// Zero for |z| <= lambda; otherwise the larger-magnitude stationary point
/// (z-1)/2 + sqrt(z - lambda + (z-1)^2/4), mirrored for negative z.
double log_penalty_estimate_1d(const PenaltyProblem1D& problem);

/// Soft threshold: 0 for |z| <= lambda, else z - sign(z) lambda.
double lasso_estimate_1d(const PenaltyProblem1D& problem);

/// beta^2 - 2 beta z + 2 lambda log(1 + |beta|).
double log_penalty_objective_1d(const PenaltyProblem1D& problem, double beta);

/// log_penalty_estimate_1d(z, lambda) - z for z > lambda; tends to zero as z grows.
double estimator_gap(double z, double lambda);

struct PenaltyExperimentConfig {
    double beta = 0.0;
    double lambda = 0.5;
    int n = 100;
    int reps = 1000;
    std::uint64_t seed = 1729;
};

struct PenaltyExperimentResult {
    double mse_lasso = 0.0; ///< M_L
    double mse_log = 0.0;   ///< M_N
};

/// Per replicate: y_i = beta + eps_i with standard normal eps, z = mean(y),
/// both estimators at the configured lambda; returns the two mean squared
/// errors. Replicate r draws from its own stream derived from the seed.
PenaltyExperimentResult mse_experiment(const PenaltyExperimentConfig& config);

/// sum (y - X beta)^2 + 2 lambda sum_j log(1 + |beta_j|).
double log_penalty_objective(const Matrix& X, const Vector& y, const Vector& beta, double lambda);
/// sum (y - X beta)^2 + 2 lambda sum_j |beta_j|.
double lasso_objective(const Matrix& X, const Vector& y, const Vector& beta, double lambda);

struct CoordinateDescentResult {
    Vector beta;
    int sweeps = 0;
    std::vector<double> objective_history;
};

struct CoordinateDescentOptions {
    double tol = 1e-10;
    int max_sweeps = 10000;
};

/// Cyclic coordinate descent on log_penalty_objective; columns of X must have
/// unit sum of squares. Each update applies log_penalty_estimate_1d to the
/// partial-residual statistic. Stops when the largest coordinate change is
/// below tol; throws ConvergenceError (with the objective history in the
/// message) after max_sweeps.
CoordinateDescentResult coordinate_descent_logpenalty(const Matrix& X, const Vector& y, double lambda,
                                                      const CoordinateDescentOptions& options = {});

/// Same scheme with soft thresholding.
CoordinateDescentResult coordinate_descent_lasso(const Matrix& X, const Vector& y, double lambda,
                                                 const CoordinateDescentOptions& options = {});

/// lambda matching the (d+1) log(1 + |beta|) penalty for d coefficients.
inline double default_log_penalty_lambda(int d) { return 0.5 * (d + 1); }

} // namespace mlomax
