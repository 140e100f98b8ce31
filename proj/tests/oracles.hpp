#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "mlomax/numerics.hpp"

namespace oracle {

using mlomax::Matrix;
using mlomax::Vector;

/// Integral of f over [0, inf) via x = scale * t / (1 - t), t in [0, 1).
inline double half_line(const std::function<double(double)>& f, double scale, double rel_tol = 1e-11) {
    auto g = [&](double t) {
        const double one_minus = 1.0 - t;
        return f(scale * t / one_minus) * scale / (one_minus * one_minus);
    };
    mlomax::QuadratureOptions options;
    options.rel_tol = rel_tol;
    options.abs_tol = 1e-15;
    options.max_intervals = 20000;
    return mlomax::integrate(g, 0.0, 1.0, options).value;
}

/// Integral over a product of half-lines and (for `folded` coordinates) whole
/// lines, by nested one-dimensional quadrature.
inline double orthant(const std::function<double(const Vector&)>& f, int dim, double scale,
                      const std::vector<bool>& folded = {}, double rel_tol = 1e-9) {
    Vector x(dim);
    std::function<double(int)> level = [&](int i) -> double {
        if (i == dim) return f(x);
        auto inner = [&, i](double v) {
            x(i) = v;
            return level(i + 1);
        };
        const bool fold = i < static_cast<int>(folded.size()) && folded[static_cast<std::size_t>(i)];
        double total = half_line(inner, scale, rel_tol);
        if (fold) total += half_line([&](double v) { return inner(-v); }, scale, rel_tol);
        return total;
    };
    return level(0);
}

/// Sup distance between the empirical CDF of `sample` and `cdf`.
inline double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - F)});
    }
    return d;
}

/// Central-difference Hessian with relative step h.
inline Matrix fd_hessian(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-4) {
    const Eigen::Index n = x.size();
    Matrix H(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double hi = h * std::max(1.0, std::abs(x(i)));
            const double hj = h * std::max(1.0, std::abs(x(j)));
            auto at = [&](double si, double sj) {
                Vector y = x;
                y(i) += si * hi;
                y(j) += sj * hj;
                return f(y);
            };
            H(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hi * hj);
        }
    }
    return H;
}

/// Golden-section maximization of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Weibull log-likelihood written out directly.
inline double weibull_loglik(double scale, double shape, const std::vector<double>& data) {
    double ll = 0.0;
    for (double x : data) {
        ll += std::log(shape / scale) + (shape - 1.0) * std::log(x / scale) - std::pow(x / scale, shape);
    }
    return ll;
}

struct ShapeScale {
    double shape;
    double scale;
};

/// Weibull MLE by a coarse (shape, scale) grid search refined by coordinate-wise golden sections.
inline ShapeScale weibull_grid_mle(const std::vector<double>& data) {
    double best = -INFINITY, shape = 1.0, scale = 1.0;
    for (double s = 0.1; s <= 5.0; s += 0.01) {
        for (double t = 0.5; t <= 60.0; t += 0.25) {
            const double ll = weibull_loglik(t, s, data);
            if (ll > best) {
                best = ll;
                shape = s;
                scale = t;
            }
        }
    }
    for (int sweep = 0; sweep < 60; ++sweep) {
        shape = golden_max([&](double s) { return weibull_loglik(scale, s, data); }, shape * 0.8, shape * 1.25);
        scale = golden_max([&](double t) { return weibull_loglik(t, shape, data); }, scale * 0.8, scale * 1.25);
    }
    return {shape, scale};
}

} // namespace oracle
