#include "mlomax/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mlomax {

Model parse_model(const std::string& name) {
    if (name == "weibull") return Model::weibull;
    if (name == "dagum") return Model::dagum;
    if (name == "linreg") return Model::linreg;
    throw std::invalid_argument("unknown model '" + name + "' (expected weibull, dagum or linreg)");
}

std::string model_name(Model model) {
    switch (model) {
    case Model::weibull: return "weibull";
    case Model::dagum: return "dagum";
    case Model::linreg: return "linreg";
    }
    return "unknown";
}

std::vector<std::string> parameter_names(Model model, int covariates) {
    switch (model) {
    case Model::weibull: return {"theta", "beta"};
    case Model::dagum: return {"a", "b", "p"};
    case Model::linreg: {
        std::vector<std::string> names;
        for (int j = 0; j <= covariates; ++j) names.push_back("beta" + std::to_string(j));
        names.push_back("sigma2");
        return names;
    }
    }
    return {};
}

LomaxSpecd lomax_prior_spec(Model model, int dim, double k, double a) {
    std::vector<int> folded;
    if (model == Model::linreg) {
        for (int j = 0; j + 1 < dim; ++j) folded.push_back(j);
    }
    return LomaxSpecd(dim, k, a, folded);
}

PriorSpec instantiate_prior(const PriorChoice& choice, Model model, const Dataset& data) {
    const int dim = model == Model::linreg ? static_cast<int>(data.X.cols()) + 2
                                           : static_cast<int>(parameter_names(model).size());
    auto reject = [&] {
        return std::invalid_argument("prior '" + choice.kind + "' does not apply to model '" + model_name(model) + "'");
    };
    if (choice.kind == "lomax") return LomaxPrior{lomax_prior_spec(model, dim, choice.lomax_k, choice.lomax_a)};
    if (choice.kind == "weibull-reference") {
        if (model != Model::weibull) throw reject();
        return WeibullReferencePrior{};
    }
    if (choice.kind == "vague-gamma-product") {
        if (model == Model::linreg) throw reject();
        return VagueGammaPrior{std::vector<GammaComponent>(static_cast<std::size_t>(dim),
                                                           GammaComponent{choice.gamma_shape, choice.gamma_rate})};
    }
    if (choice.kind == "vague-normal-sigma") {
        if (model != Model::linreg) throw reject();
        return VagueNormalSigmaPrior{choice.c};
    }
    if (choice.kind == "zellner-g") {
        if (model != Model::linreg) throw reject();
        return make_zellner_g(with_intercept(data.X), choice.g);
    }
    throw std::invalid_argument("unknown prior kind '" + choice.kind + "'");
}

PosteriorTarget make_weibull_target(std::span<const double> data, const PriorSpec& prior) {
    if (data.empty()) throw std::invalid_argument("make_weibull_target: empty data");
    std::vector<double> logs;
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("make_weibull_target: observations must be positive");
        logs.push_back(std::log(x));
    }
    double sum_log = 0.0;
    for (double l : logs) sum_log += l;
    const double n = static_cast<double>(logs.size());

    PosteriorTarget target;
    target.support = {Support::positive, Support::positive};
    target.names = parameter_names(Model::weibull);
    target.log_density = [logs = std::move(logs), sum_log, n, prior](const Vector& x) {
        const double theta = x(0);
        const double beta = x(1);
        const double log_theta = std::log(theta);
        double sum_pow = 0.0;
        for (double l : logs) sum_pow += std::exp(beta * (l - log_theta));
        const double loglik = n * std::log(beta) + (beta - 1.0) * sum_log - n * beta * log_theta - sum_pow;
        return loglik + log_prior(prior, x);
    };
    return target;
}

PosteriorTarget make_dagum_target(std::span<const double> data, const PriorSpec& prior) {
    if (data.empty()) throw std::invalid_argument("make_dagum_target: empty data");
    std::vector<double> logs;
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("make_dagum_target: observations must be positive");
        logs.push_back(std::log(x));
    }
    double sum_log = 0.0;
    for (double l : logs) sum_log += l;
    const double n = static_cast<double>(logs.size());

    PosteriorTarget target;
    target.support = {Support::positive, Support::positive, Support::positive};
    target.names = parameter_names(Model::dagum);
    target.log_density = [logs = std::move(logs), sum_log, n, prior](const Vector& x) {
        const double a = x(0);
        const double log_b = std::log(x(1));
        const double p = x(2);
        double soft = 0.0;
        for (double l : logs) {
            const double t = a * (l - log_b);
            soft += t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
        }
        const double loglik = n * (std::log(a) + std::log(p)) - sum_log + a * p * (sum_log - n * log_b) -
                              (p + 1.0) * soft;
        return loglik + log_prior(prior, x);
    };
    return target;
}

PosteriorTarget make_linreg_target(const Matrix& X, const Vector& y, const PriorSpec& prior) {
    if (X.rows() != y.size()) throw std::invalid_argument("make_linreg_target: X and y row counts differ");
    const Matrix D = with_intercept(X);
    const Matrix gram = D.transpose() * D;
    const Vector cross = D.transpose() * y;
    const double yy = y.squaredNorm();
    const double n = static_cast<double>(y.size());
    const Eigen::Index p = D.cols();

    PosteriorTarget target;
    target.support.assign(static_cast<std::size_t>(p), Support::real_line);
    target.support.push_back(Support::positive);
    target.names = parameter_names(Model::linreg, static_cast<int>(X.cols()));
    target.log_density = [gram, cross, yy, n, p, prior](const Vector& x) {
        const auto coef = x.head(p);
        const double sigma2 = x(p);
        const double rss = std::max(0.0, yy - 2.0 * coef.dot(cross) + coef.dot(gram * coef));
        const double loglik = -0.5 * n * std::log(2.0 * std::numbers::pi * sigma2) - rss / (2.0 * sigma2);
        return loglik + log_prior(prior, x);
    };
    return target;
}

PosteriorTarget make_target(Model model, const Dataset& data, const PriorSpec& prior) {
    switch (model) {
    case Model::weibull:
        return make_weibull_target(std::span<const double>(data.values.data(), static_cast<std::size_t>(data.values.size())), prior);
    case Model::dagum:
        return make_dagum_target(std::span<const double>(data.values.data(), static_cast<std::size_t>(data.values.size())), prior);
    case Model::linreg: return make_linreg_target(data.X, data.y, prior);
    }
    throw std::invalid_argument("make_target: unknown model");
}

Vector initial_point(Model model, const Dataset& data) {
    const std::span<const double> values(data.values.data(), static_cast<std::size_t>(data.values.size()));
    switch (model) {
    case Model::weibull: {
        const WeibullParams mle = weibull_mle(values);
        return Vector{{mle.scale, mle.shape}};
    }
    case Model::dagum: {
        if (values.size() < 2) throw std::invalid_argument("initial_point: need at least two observations");
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        double mean_log = 0.0;
        for (double x : sorted) mean_log += std::log(x);
        mean_log /= static_cast<double>(sorted.size());
        double var_log = 0.0;
        for (double x : sorted) var_log += (std::log(x) - mean_log) * (std::log(x) - mean_log);
        var_log /= static_cast<double>(sorted.size() - 1);
        const double a = var_log > 0.0 ? std::numbers::pi / std::sqrt(3.0 * var_log) : 1.0;
        return Vector{{a, sorted_quantile(sorted, 0.5), 1.0}};
    }
    case Model::linreg: {
        const LinRegParams ols = least_squares(data.X, data.y);
        Vector x(ols.coefficients.size() + 2);
        x(0) = ols.intercept;
        x.segment(1, ols.coefficients.size()) = ols.coefficients;
        x(x.size() - 1) = ols.sigma2;
        return x;
    }
    }
    throw std::invalid_argument("initial_point: unknown model");
}

Vector initial_steps(Model model, const Dataset& data) {
    switch (model) {
    case Model::weibull: return Vector::Constant(2, 0.2);
    case Model::dagum: return Vector::Constant(3, 0.2);
    case Model::linreg: {
        // Coordinate-wise conditional scales sigma / sqrt(diag(D^T D)).
        const LinRegParams ols = least_squares(data.X, data.y);
        const Matrix D = with_intercept(data.X);
        Vector steps(D.cols() + 1);
        for (Eigen::Index j = 0; j < D.cols(); ++j) {
            steps(j) = 2.0 * std::sqrt(ols.sigma2 / D.col(j).squaredNorm());
        }
        steps(D.cols()) = 2.0 * std::sqrt(2.0 / static_cast<double>(D.rows()));
        return steps;
    }
    }
    throw std::invalid_argument("initial_steps: unknown model");
}

ChainOutput fit(Model model, const PriorChoice& prior, const Dataset& data, ChainConfig config) {
    const PriorSpec spec = instantiate_prior(prior, model, data);
    const PosteriorTarget target = make_target(model, data, spec);
    if (config.initial.size() == 0) config.initial = initial_point(model, data);
    if (config.steps.size() == 0) config.steps = initial_steps(model, data);
    return run_chain(target, config);
}

} // namespace mlomax
