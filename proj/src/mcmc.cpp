#include "mlomax/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mlomax {

namespace {

double safe_log_density(const PosteriorTarget& target, const Vector& x) {
    if (!target.in_support(x)) return -std::numeric_limits<double>::infinity();
    try {
        const double v = target.log_density(x);
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    } catch (const std::domain_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

} // namespace

bool PosteriorTarget::in_support(const Vector& x) const {
    if (x.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (!std::isfinite(x(i))) return false;
        if (support[static_cast<std::size_t>(i)] == Support::positive && !(x(i) > 0.0)) return false;
    }
    return true;
}

void ChainConfig::validate(int dim) const {
    if (iterations < 1 || burn_in < 0 || thin < 1) {
        throw std::invalid_argument("ChainConfig: iterations and thin must be positive, burn_in non-negative");
    }
    if (burn_in >= iterations) throw std::invalid_argument("ChainConfig: burn_in must be below iterations");
    if (adapt_interval < 1) throw std::invalid_argument("ChainConfig: adapt_interval must be positive");
    if (initial.size() != dim) throw std::invalid_argument("ChainConfig: initial point has wrong dimension");
    if (steps.size() != 0 && steps.size() != dim) {
        throw std::invalid_argument("ChainConfig: step vector has wrong dimension");
    }
    if (steps.size() == dim && !(steps.array() > 0.0).all()) {
        throw std::invalid_argument("ChainConfig: steps must be positive");
    }
}

ChainConfig short_chain_preset() {
    ChainConfig c;
    c.iterations = 20000;
    c.burn_in = 5000;
    c.thin = 10;
    return c;
}

ChainConfig full_chain_preset() { return ChainConfig{}; }

int retained_count(const ChainConfig& config) { return (config.iterations - config.burn_in) / config.thin; }

Vector adapt_steps(const Vector& steps, const Vector& window_acceptance) {
    if (steps.size() != window_acceptance.size()) throw std::invalid_argument("adapt_steps: size mismatch");
    Vector out = steps;
    for (Eigen::Index i = 0; i < steps.size(); ++i) {
        if (window_acceptance(i) > 0.5) {
            out(i) *= 1.2;
        } else if (window_acceptance(i) < 0.2) {
            out(i) /= 1.2;
        }
    }
    return out;
}

ChainOutput run_chain(const PosteriorTarget& target, const ChainConfig& config) {
    const int dim = target.dim();
    if (static_cast<int>(target.names.size()) != dim && !target.names.empty()) {
        throw std::invalid_argument("run_chain: one name per coordinate required");
    }
    config.validate(dim);

    Vector x = config.initial;
    double current = safe_log_density(target, x);
    if (!std::isfinite(current)) {
        throw std::invalid_argument("run_chain: log posterior at the initial point is not finite");
    }
    Vector steps = config.steps.size() == dim ? config.steps : Vector::Constant(dim, 0.2);

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    ChainOutput out;
    out.names = target.names;
    out.draws.resize(retained_count(config), dim);
    Eigen::VectorXi window_accepts = Eigen::VectorXi::Zero(dim);
    Eigen::VectorXi kept_accepts = Eigen::VectorXi::Zero(dim);
    int window_sweeps = 0;
    int row = 0;

    for (int it = 0; it < config.iterations; ++it) {
        for (int i = 0; i < dim; ++i) {
            const double old = x(i);
            double log_jacobian = 0.0;
            if (target.support[static_cast<std::size_t>(i)] == Support::positive) {
                x(i) = old * std::exp(steps(i) * normal(rng));
                log_jacobian = std::log(x(i)) - std::log(old);
            } else {
                x(i) = old + steps(i) * normal(rng);
            }
            const double proposed = safe_log_density(target, x);
            const double log_ratio = proposed - current + log_jacobian;
            if (std::isfinite(proposed) && std::log(unif(rng)) < log_ratio) {
                current = proposed;
                if (it < config.burn_in) {
                    ++window_accepts(i);
                } else {
                    ++kept_accepts(i);
                }
            } else {
                x(i) = old;
            }
        }

        if (it < config.burn_in) {
            if (config.adapt && ++window_sweeps == config.adapt_interval) {
                steps = adapt_steps(steps, window_accepts.cast<double>() / window_sweeps);
                window_accepts.setZero();
                window_sweeps = 0;
            }
            continue;
        }
        if ((it - config.burn_in + 1) % config.thin == 0 && row < out.draws.rows()) {
            out.draws.row(row++) = x.transpose();
        }
    }

    out.acceptance = kept_accepts.cast<double>() / static_cast<double>(config.iterations - config.burn_in);
    out.steps = steps;
    return out;
}

double effective_sample_size(const Eigen::Ref<const Vector>& series) {
    const Eigen::Index n = series.size();
    if (n < 4) return static_cast<double>(n);
    const Vector centered = series.array() - series.mean();
    const double c0 = centered.squaredNorm() / static_cast<double>(n);
    if (c0 <= 0.0) return static_cast<double>(n);
    auto rho = [&](Eigen::Index lag) {
        return centered.head(n - lag).dot(centered.tail(n - lag)) / (static_cast<double>(n) * c0);
    };
    double sum = 0.0;
    for (Eigen::Index lag = 1; lag + 1 < n; lag += 2) {
        const double pair = rho(lag) + rho(lag + 1);
        if (pair <= 0.0) break;
        sum += pair;
    }
    const double tau = 1.0 + 2.0 * sum;
    return static_cast<double>(n) / std::max(tau, 1e-12);
}

std::vector<CoordinateSummary> summarize(const Matrix& draws, const std::vector<std::string>& names) {
    if (draws.rows() < 100) throw std::invalid_argument("summarize: at least 100 retained draws required");
    std::vector<CoordinateSummary> out;
    for (Eigen::Index j = 0; j < draws.cols(); ++j) {
        const auto col = draws.col(j);
        std::vector<double> sorted(col.data(), col.data() + col.size());
        std::sort(sorted.begin(), sorted.end());
        CoordinateSummary s;
        s.name = static_cast<std::size_t>(j) < names.size() ? names[static_cast<std::size_t>(j)]
                                                            : "x" + std::to_string(j + 1);
        s.mean = col.mean();
        s.variance = (col.array() - s.mean).square().sum() / static_cast<double>(col.size() - 1);
        s.median = sorted_quantile(sorted, 0.5);
        s.lower = sorted_quantile(sorted, 0.025);
        s.upper = sorted_quantile(sorted, 0.975);
        s.ess = effective_sample_size(col);
        out.push_back(s);
    }
    return out;
}

std::vector<CoordinateSummary> summarize(const ChainOutput& chain) { return summarize(chain.draws, chain.names); }

} // namespace mlomax
