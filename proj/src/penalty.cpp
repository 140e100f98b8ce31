#include "mlomax/penalty.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mlomax/errors.hpp"

namespace mlomax {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("penalty: lambda must be positive");
}

using Update = double (*)(const PenaltyProblem1D&);

CoordinateDescentResult coordinate_descent(const Matrix& X, const Vector& y, double lambda,
                                           const CoordinateDescentOptions& options, Update update,
                                           double (*objective)(const Matrix&, const Vector&, const Vector&, double)) {
    check_lambda(lambda);
    if (X.rows() != y.size()) throw std::invalid_argument("coordinate_descent: X and y row counts differ");
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        if (std::abs(X.col(j).squaredNorm() - 1.0) > 1e-8) {
            throw std::invalid_argument("coordinate_descent: columns must have unit sum of squares");
        }
    }
    CoordinateDescentResult result;
    result.beta = Vector::Zero(X.cols());
    Vector residual = y;
    result.objective_history.push_back(objective(X, y, result.beta, lambda));
    for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < X.cols(); ++j) {
            const double old = result.beta(j);
            const double z = X.col(j).dot(residual) + old;
            const double next = update({z, lambda});
            if (next != old) {
                residual -= (next - old) * X.col(j);
                result.beta(j) = next;
                max_change = std::max(max_change, std::abs(next - old));
            }
        }
        result.objective_history.push_back(objective(X, y, result.beta, lambda));
        result.sweeps = sweep;
        if (max_change < options.tol) return result;
    }
    std::ostringstream msg;
    msg << "coordinate_descent: no convergence after " << options.max_sweeps << " sweeps; objective history";
    const std::size_t tail = std::min<std::size_t>(result.objective_history.size(), 5);
    for (std::size_t i = result.objective_history.size() - tail; i < result.objective_history.size(); ++i) {
        msg << ' ' << result.objective_history[i];
    }
    throw ConvergenceError(msg.str());
}

} // namespace

double log_penalty_estimate_1d(const PenaltyProblem1D& problem) {
    check_lambda(problem.lambda);
    const double z = problem.z;
    const double lambda = problem.lambda;
    if (std::abs(z) <= lambda) return 0.0;
    if (z > 0.0) return 0.5 * (z - 1.0) + std::sqrt(z - lambda + 0.25 * (z - 1.0) * (z - 1.0));
    return 0.5 * (1.0 + z) - std::sqrt(-lambda - z + 0.25 * (1.0 + z) * (1.0 + z));
}

double lasso_estimate_1d(const PenaltyProblem1D& problem) {
    check_lambda(problem.lambda);
    if (std::abs(problem.z) <= problem.lambda) return 0.0;
    return problem.z > 0.0 ? problem.z - problem.lambda : problem.z + problem.lambda;
}

double log_penalty_objective_1d(const PenaltyProblem1D& problem, double beta) {
    return beta * beta - 2.0 * beta * problem.z + 2.0 * problem.lambda * std::log1p(std::abs(beta));
}

double estimator_gap(double z, double lambda) {
    check_lambda(lambda);
    if (!(z > lambda)) throw std::domain_error("estimator_gap: requires z > lambda");
    return log_penalty_estimate_1d({z, lambda}) - z;
}

PenaltyExperimentResult mse_experiment(const PenaltyExperimentConfig& config) {
    check_lambda(config.lambda);
    if (config.n < 2) throw std::invalid_argument("mse_experiment: n must be at least 2");
    if (config.reps < 1) throw std::invalid_argument("mse_experiment: reps must be at least 1");
    PenaltyExperimentResult out;
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < config.reps; ++r) {
        std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
        double sum = 0.0;
        for (int i = 0; i < config.n; ++i) sum += config.beta + normal(rng);
        const PenaltyProblem1D problem{sum / config.n, config.lambda};
        const double el = lasso_estimate_1d(problem) - config.beta;
        const double en = log_penalty_estimate_1d(problem) - config.beta;
        out.mse_lasso += el * el;
        out.mse_log += en * en;
        normal.reset();
    }
    out.mse_lasso /= config.reps;
    out.mse_log /= config.reps;
    return out;
}

double log_penalty_objective(const Matrix& X, const Vector& y, const Vector& beta, double lambda) {
    return (y - X * beta).squaredNorm() + 2.0 * lambda * beta.array().abs().log1p().sum();
}

double lasso_objective(const Matrix& X, const Vector& y, const Vector& beta, double lambda) {
    return (y - X * beta).squaredNorm() + 2.0 * lambda * beta.array().abs().sum();
}

CoordinateDescentResult coordinate_descent_logpenalty(const Matrix& X, const Vector& y, double lambda,
                                                      const CoordinateDescentOptions& options) {
    return coordinate_descent(X, y, lambda, options, &log_penalty_estimate_1d, &log_penalty_objective);
}

CoordinateDescentResult coordinate_descent_lasso(const Matrix& X, const Vector& y, double lambda,
                                                 const CoordinateDescentOptions& options) {
    return coordinate_descent(X, y, lambda, options, &lasso_estimate_1d, &lasso_objective);
}

} // namespace mlomax
