#include "mlomax/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "mlomax/errors.hpp"

namespace mlomax {

namespace {

void check_weibull(const WeibullParams& params) {
    if (!(params.scale > 0.0) || !(params.shape > 0.0)) {
        throw std::domain_error("weibull: scale and shape must be positive");
    }
}

void check_dagum(const DagumParams& params) {
    if (!(params.a > 0.0) || !(params.b > 0.0) || !(params.p > 0.0)) {
        throw std::domain_error("dagum: a, b and p must be positive");
    }
}

void check_probability(double u, const char* who) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error(std::string(who) + ": probability must lie in (0, 1)");
}

// log(1 + e^t) without overflow
double softplus(double t) { return t > 30.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double log_gamma_density(const GammaComponent& c, double x) {
    return c.shape * std::log(c.rate) - std::lgamma(c.shape) + (c.shape - 1.0) * std::log(x) - c.rate * x;
}

double require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::domain_error(std::string("log_prior: ") + what + " must be positive");
    return v;
}

} // namespace

// ---------------------------------------------------------------- Weibull

double weibull_logpdf(const WeibullParams& params, double x) {
    check_weibull(params);
    if (!(x > 0.0)) throw std::domain_error("weibull_logpdf: x must be positive");
    const double beta = params.shape;
    return std::log(beta) + (beta - 1.0) * std::log(x) - beta * std::log(params.scale) -
           std::pow(x / params.scale, beta);
}

double weibull_cdf(const WeibullParams& params, double x) {
    check_weibull(params);
    if (x <= 0.0) return 0.0;
    return -std::expm1(-std::pow(x / params.scale, params.shape));
}

double weibull_quantile_sample(const WeibullParams& params, double u) {
    check_weibull(params);
    check_probability(u, "weibull_quantile_sample");
    return params.scale * std::pow(-std::log1p(-u), 1.0 / params.shape);
}

double weibull_loglik(const WeibullParams& params, std::span<const double> data) {
    double total = 0.0;
    for (double x : data) total += weibull_logpdf(params, x);
    return total;
}

Eigen::Vector2d weibull_loglik_gradient(const WeibullParams& params, std::span<const double> data) {
    check_weibull(params);
    const double theta = params.scale;
    const double beta = params.shape;
    const double n = static_cast<double>(data.size());
    double sum_pow = 0.0;
    double sum_pow_log = 0.0;
    double sum_log = 0.0;
    for (double x : data) {
        const double r = std::log(x / theta);
        const double w = std::exp(beta * r);
        sum_pow += w;
        sum_pow_log += w * r;
        sum_log += r;
    }
    Eigen::Vector2d grad;
    grad(0) = beta / theta * (sum_pow - n);
    grad(1) = n / beta + sum_log - sum_pow_log;
    return grad;
}

WeibullParams weibull_mle(std::span<const double> data, const MleOptions& options) {
    if (data.size() < 2) throw std::invalid_argument("weibull_mle: need at least two observations");
    std::vector<double> logs;
    logs.reserve(data.size());
    for (double x : data) {
        if (!(x > 0.0)) throw std::domain_error("weibull_mle: observations must be positive");
        logs.push_back(std::log(x));
    }
    const auto [min_it, max_it] = std::minmax_element(logs.begin(), logs.end());
    const double log_max = *max_it;
    if (log_max == *min_it) throw std::invalid_argument("weibull_mle: observations are all equal");
    double mean_log = 0.0;
    for (double l : logs) mean_log += l;
    mean_log /= static_cast<double>(logs.size());

    // Profile equation h(beta) = sum w log x / sum w - 1/beta - mean log x, with
    // w = x^beta rescaled by max(x)^beta; h is increasing in beta.
    struct Profile {
        double h;
        double dh;
    };
    auto profile = [&](double beta) {
        double s0 = 0.0;
        double s1 = 0.0;
        double s2 = 0.0;
        for (double l : logs) {
            const double w = std::exp(beta * (l - log_max));
            s0 += w;
            s1 += w * l;
            s2 += w * l * l;
        }
        const double m1 = s1 / s0;
        return Profile{m1 - 1.0 / beta - mean_log, s2 / s0 - m1 * m1 + 1.0 / (beta * beta)};
    };

    double lo = 1.0;
    double hi = 1.0;
    while (profile(lo).h > 0.0) lo *= 0.5;
    while (profile(hi).h < 0.0) hi *= 2.0;

    auto closed_form_scale = [&](double beta) {
        double sum_w = 0.0;
        for (double l : logs) sum_w += std::exp(beta * (l - log_max));
        return std::exp(log_max + std::log(sum_w / static_cast<double>(logs.size())) / beta);
    };

    double beta = 0.5 * (lo + hi);
    for (int it = 0; it < options.max_iterations; ++it) {
        const Profile pr = profile(beta);
        if (pr.h == 0.0) return {closed_form_scale(beta), beta};
        if (pr.h < 0.0) {
            lo = beta;
        } else {
            hi = beta;
        }
        double next = beta - pr.h / pr.dh;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool done = std::abs(next - beta) <= options.tolerance * beta;
        beta = next;
        if (done) return {closed_form_scale(beta), beta};
    }
    throw ConvergenceError("weibull_mle: profile equation did not converge");
}

// ------------------------------------------------------------------ Dagum

double dagum_logpdf(const DagumParams& params, double x) {
    check_dagum(params);
    if (!(x > 0.0)) throw std::domain_error("dagum_logpdf: x must be positive");
    const double t = std::log(x) - std::log(params.b);
    return std::log(params.a) + std::log(params.p) - std::log(x) + params.a * params.p * t -
           (params.p + 1.0) * softplus(params.a * t);
}

double dagum_cdf(const DagumParams& params, double x) {
    check_dagum(params);
    if (x <= 0.0) return 0.0;
    const double t = std::log(x) - std::log(params.b);
    return std::exp(-params.p * softplus(-params.a * t));
}

double dagum_quantile_sample(const DagumParams& params, double u) {
    check_dagum(params);
    check_probability(u, "dagum_quantile_sample");
    // u^(-1/p) - 1 = expm1(-log(u)/p)
    return params.b * std::pow(std::expm1(-std::log(u) / params.p), -1.0 / params.a);
}

double dagum_loglik(const DagumParams& params, std::span<const double> data) {
    double total = 0.0;
    for (double x : data) total += dagum_logpdf(params, x);
    return total;
}

double dagum_mode(const DagumParams& params) {
    check_dagum(params);
    const double ap = params.a * params.p;
    if (ap <= 1.0) return 0.0;
    return params.b * std::pow((ap - 1.0) / (params.a + 1.0), 1.0 / params.a);
}

// ------------------------------------------------------ linear regression

double linreg_loglik(const LinRegParams& params, const Matrix& X, const Vector& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("linreg_loglik: X and y row counts differ");
    if (X.cols() != params.coefficients.size()) {
        throw std::invalid_argument("linreg_loglik: coefficient count does not match X");
    }
    if (!(params.sigma2 > 0.0)) throw std::domain_error("linreg_loglik: sigma2 must be positive");
    const Vector residual = (y - X * params.coefficients).array() - params.intercept;
    const double n = static_cast<double>(y.size());
    return -0.5 * n * std::log(2.0 * std::numbers::pi * params.sigma2) -
           residual.squaredNorm() / (2.0 * params.sigma2);
}

Matrix with_intercept(const Matrix& X) {
    Matrix D(X.rows(), X.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(X.cols()) = X;
    return D;
}

LinRegParams least_squares(const Matrix& X, const Vector& y) {
    if (X.rows() != y.size()) throw std::invalid_argument("least_squares: X and y row counts differ");
    const Matrix D = with_intercept(X);
    if (D.rows() <= D.cols()) throw std::invalid_argument("least_squares: need more rows than parameters");
    const Eigen::ColPivHouseholderQR<Matrix> qr(D);
    if (qr.rank() < D.cols()) throw std::invalid_argument("least_squares: design lacks full column rank");
    const Vector coef = qr.solve(y);
    LinRegParams out;
    out.intercept = coef(0);
    out.coefficients = coef.tail(X.cols());
    out.sigma2 = (y - D * coef).squaredNorm() / static_cast<double>(D.rows() - D.cols());
    return out;
}

// ----------------------------------------------------------------- priors

ZellnerGPrior make_zellner_g(const Matrix& design, double g) {
    if (!(g > 0.0)) throw std::invalid_argument("make_zellner_g: g must be positive");
    const Eigen::ColPivHouseholderQR<Matrix> qr(design);
    if (qr.rank() < design.cols()) {
        throw std::invalid_argument("make_zellner_g: design matrix lacks full column rank");
    }
    ZellnerGPrior prior;
    prior.g = g;
    prior.gram = design.transpose() * design;
    const Eigen::LLT<Matrix> llt(prior.gram);
    prior.log_det_gram = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return prior;
}

std::string prior_kind(const PriorSpec& prior) {
    struct Visitor {
        std::string operator()(const LomaxPrior&) const { return "lomax"; }
        std::string operator()(const WeibullReferencePrior&) const { return "weibull-reference"; }
        std::string operator()(const VagueGammaPrior&) const { return "vague-gamma-product"; }
        std::string operator()(const VagueNormalSigmaPrior&) const { return "vague-normal-sigma"; }
        std::string operator()(const ZellnerGPrior&) const { return "zellner-g"; }
    };
    return std::visit(Visitor{}, prior);
}

double log_prior(const PriorSpec& prior, const Vector& params) {
    struct Visitor {
        const Vector& x;

        double operator()(const LomaxPrior& p) const { return log_density(p.spec, x); }

        double operator()(const WeibullReferencePrior&) const {
            if (x.size() != 2) throw std::invalid_argument("log_prior: reference prior expects (theta, beta)");
            return -std::log(require_positive(x(0), "theta")) - std::log(require_positive(x(1), "beta"));
        }

        double operator()(const VagueGammaPrior& p) const {
            if (static_cast<std::size_t>(x.size()) != p.components.size()) {
                throw std::invalid_argument("log_prior: one Gamma component per parameter required");
            }
            double total = 0.0;
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                total += log_gamma_density(p.components[static_cast<std::size_t>(i)],
                                           require_positive(x(i), "Gamma-distributed parameter"));
            }
            return total;
        }

        double operator()(const VagueNormalSigmaPrior& p) const {
            if (x.size() < 2) throw std::invalid_argument("log_prior: expects (coefficients..., sigma2)");
            const double sigma2 = require_positive(x(x.size() - 1), "sigma2");
            const auto coef = x.head(x.size() - 1);
            const double k = static_cast<double>(coef.size());
            return -std::log(sigma2) - 0.5 * k * std::log(2.0 * std::numbers::pi * p.c) -
                   coef.squaredNorm() / (2.0 * p.c);
        }

        double operator()(const ZellnerGPrior& p) const {
            if (x.size() != p.gram.rows() + 1) {
                throw std::invalid_argument("log_prior: g prior expects (coefficients..., sigma2)");
            }
            const double sigma2 = require_positive(x(x.size() - 1), "sigma2");
            const Vector coef = x.head(x.size() - 1);
            const double k = static_cast<double>(coef.size());
            const double scale = sigma2 * p.g;
            return -std::log(sigma2) - 0.5 * k * std::log(2.0 * std::numbers::pi * scale) +
                   0.5 * p.log_det_gram - coef.dot(p.gram * coef) / (2.0 * scale);
        }
    };
    return std::visit(Visitor{params}, prior);
}

double zellner_log_marginal_likelihood(const Matrix& design, const Vector& y, double sigma2, double g) {
    if (design.rows() != y.size()) throw std::invalid_argument("zellner_log_marginal_likelihood: size mismatch");
    const Eigen::Index n = y.size();
    const Matrix gram = design.transpose() * design;
    const Matrix hat = design * gram.ldlt().solve(design.transpose());
    const Matrix cov = sigma2 * (Matrix::Identity(n, n) + g * hat);
    const Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success) throw NumericalBreakdown("zellner_log_marginal_likelihood: covariance not SPD");
    const Vector z = llt.matrixL().solve(y);
    const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi) - 0.5 * log_det - 0.5 * z.squaredNorm();
}

} // namespace mlomax
