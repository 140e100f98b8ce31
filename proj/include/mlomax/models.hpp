#pragma once

// Data models (Weibull, Dagum, Gaussian linear regression) and the priors
// compared against the multivariate Lomax.
//
// Parameter vectors handed to log_prior and to the posterior targets use a
// fixed layout per model:
//   weibull  (theta, beta)               theta = scale, beta = shape
//   dagum    (a, b, p)
//   linreg   (beta0, beta1, ..., sigma2)

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mlomax/lomax.hpp"
#include "mlomax/numerics.hpp"

namespace mlomax {

// ---------------------------------------------------------------- Weibull

struct WeibullParams {
    double scale = 1.0; ///< theta
    double shape = 1.0; ///< beta
};

/// log f(x) = log beta + (beta-1) log x - beta log theta - (x/theta)^beta
double weibull_logpdf(const WeibullParams& params, double x);
double weibull_cdf(const WeibullParams& params, double x);
/// theta (-log(1-u))^(1/beta), for 0 < u < 1.
double weibull_quantile_sample(const WeibullParams& params, double u);
double weibull_loglik(const WeibullParams& params, std::span<const double> data);
/// Gradient of the log-likelihood with respect to (theta, beta).
Eigen::Vector2d weibull_loglik_gradient(const WeibullParams& params, std::span<const double> data);

struct MleOptions {
    int max_iterations = 200;
    double tolerance = 1e-14; ///< relative change in the shape
};

/// Maximum likelihood by a safeguarded Newton solve of the profile equation in
/// the shape, followed by the closed-form scale. Throws std::invalid_argument
/// for fewer than two observations or constant data, ConvergenceError if the
/// iteration budget runs out.
WeibullParams weibull_mle(std::span<const double> data, const MleOptions& options = {});

// ------------------------------------------------------------------ Dagum

struct DagumParams {
    double a = 1.0; ///< shape
    double b = 1.0; ///< scale
    double p = 1.0; ///< shape
};

/// log a + log p - log x + a p (log x - log b) - (p+1) log(1 + (x/b)^a)
double dagum_logpdf(const DagumParams& params, double x);
/// (1 + (x/b)^-a)^-p
double dagum_cdf(const DagumParams& params, double x);
/// b (u^(-1/p) - 1)^(-1/a), for 0 < u < 1.
double dagum_quantile_sample(const DagumParams& params, double u);
double dagum_loglik(const DagumParams& params, std::span<const double> data);
/// Mode of the density; zero when a p <= 1.
double dagum_mode(const DagumParams& params);

// ------------------------------------------------------ linear regression

struct LinRegParams {
    double intercept = 0.0;
    Vector coefficients;
    double sigma2 = 1.0;
};

/// Gaussian log-likelihood of y = intercept + X coefficients + eps, with
/// eps ~ N(0, sigma2). X holds the covariates only (no intercept column).
double linreg_loglik(const LinRegParams& params, const Matrix& X, const Vector& y);

/// [1 X]: the covariates with a leading intercept column.
Matrix with_intercept(const Matrix& X);

/// Ordinary least squares on [1 X]; sigma2 is RSS / (n - p - 1).
LinRegParams least_squares(const Matrix& X, const Vector& y);

// ----------------------------------------------------------------- priors

/// Multivariate Lomax on the whole parameter vector.
struct LomaxPrior {
    LomaxSpecd spec;
};

/// pi(theta, beta) proportional to 1 / (theta beta).
struct WeibullReferencePrior {};

struct GammaComponent {
    double shape = 0.01;
    double rate = 0.01;
};

/// Independent Gamma(shape, rate) densities, one per coordinate.
struct VagueGammaPrior {
    std::vector<GammaComponent> components;
};

/// 1/sigma on sigma times N(0, c I) on the regression coefficients
/// (intercept included). Parameterized by sigma2, so the density in sigma2
/// carries the Jacobian and is proportional to 1/sigma2.
struct VagueNormalSigmaPrior {
    double c = 1e6;
};

/// 1/sigma on sigma times N(0, sigma2 g (D^T D)^-1) on the coefficients,
/// D the design matrix including the intercept column.
struct ZellnerGPrior {
    double g = 500.0;
    Matrix gram;             ///< D^T D
    double log_det_gram = 0; ///< log |D^T D|
};

/// Builds the g prior; throws std::invalid_argument if D lacks full column rank.
ZellnerGPrior make_zellner_g(const Matrix& design, double g);

using PriorSpec =
    std::variant<LomaxPrior, WeibullReferencePrior, VagueGammaPrior, VagueNormalSigmaPrior, ZellnerGPrior>;

/// Short name of the prior kind ("lomax", "weibull-reference", "vague-gamma-product",
/// "vague-normal-sigma", "zellner-g").
std::string prior_kind(const PriorSpec& prior);

/// Log prior density (up to a constant for the improper priors). Throws
/// std::domain_error outside the prior's support.
double log_prior(const PriorSpec& prior, const Vector& params);

/// log of the marginal density of y given sigma2 with the coefficients
/// integrated out under N(0, sigma2 g (D^T D)^-1), i.e. y ~ N(0, sigma2 (I + g H)),
/// H the hat matrix of D.
double zellner_log_marginal_likelihood(const Matrix& design, const Vector& y, double sigma2, double g);

} // namespace mlomax
