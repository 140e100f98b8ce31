#pragma once

// Composition of model likelihoods and priors into MCMC targets.

#include <span>
#include <string>
#include <vector>

#include "mlomax/mcmc.hpp"
#include "mlomax/models.hpp"

namespace mlomax {

enum class Model { weibull, dagum, linreg };

Model parse_model(const std::string& name);
std::string model_name(Model model);

/// Parameter names in the model's layout; `covariates` is only used for linreg.
std::vector<std::string> parameter_names(Model model, int covariates = 2);

/// Observations for one analysis. Univariate models use `values`; linreg uses
/// `X` (covariates, no intercept column) and `y`.
struct Dataset {
    Vector values;
    Matrix X;
    Vector y;
};

/// A prior described by kind and hyperparameters, turned into a PriorSpec once
/// the model and data are known (the g prior depends on the design matrix).
struct PriorChoice {
    std::string kind = "lomax"; ///< lomax | weibull-reference | vague-gamma-product | vague-normal-sigma | zellner-g
    double lomax_k = 1.0;
    double lomax_a = 1.0;
    double gamma_shape = 0.01;
    double gamma_rate = 0.01;
    double c = 1e6;
    double g = 500.0;

    std::string label() const { return kind; }
};

/// The Lomax prior over the model's parameter vector: LM(d, k, a) with every
/// regression coefficient folded onto the real line.
LomaxSpecd lomax_prior_spec(Model model, int dim, double k = 1.0, double a = 1.0);

/// Throws std::invalid_argument when the kind does not apply to the model.
PriorSpec instantiate_prior(const PriorChoice& choice, Model model, const Dataset& data);

PosteriorTarget make_weibull_target(std::span<const double> data, const PriorSpec& prior);
PosteriorTarget make_dagum_target(std::span<const double> data, const PriorSpec& prior);
PosteriorTarget make_linreg_target(const Matrix& X, const Vector& y, const PriorSpec& prior);
PosteriorTarget make_target(Model model, const Dataset& data, const PriorSpec& prior);

/// Starting point: Weibull MLE, least squares for linreg, and for Dagum the
/// p = 1 moment fit (b = median, a = pi / (sqrt(3) sd(log x))).
Vector initial_point(Model model, const Dataset& data);

/// Initial proposal scales (log scale for positive coordinates).
Vector initial_steps(Model model, const Dataset& data);

/// Runs a chain for the model/prior/data triple, filling in the initial point
/// and steps when the config leaves them empty.
ChainOutput fit(Model model, const PriorChoice& prior, const Dataset& data, ChainConfig config);

} // namespace mlomax
