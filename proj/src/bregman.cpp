#include "mlomax/bregman.hpp"

#include <algorithm>

namespace mlomax {

double bregman_divergence(const AlphaSpec& spec, const DensityField<double>& p,
                          const DensityField<double>& q, double upper, int panels, int order) {
    if (spec.dim > 2) throw std::invalid_argument("bregman_divergence: only d <= 2 is supported");
    if (p.dim != spec.dim || q.dim != spec.dim) {
        throw std::invalid_argument("bregman_divergence: field dimension mismatch");
    }
    const GaussRule rule = gauss_legendre(order);

    auto integrand = [&](const Vector& x) {
        const double pv = p.value(x);
        const double qv = q.value(x);
        const Vector pg = p.grad(x);
        const Vector qg = q.grad(x);
        const auto dq = phi_partials(spec, qv, qg);
        return phi(spec, pv, pg) - phi(spec, qv, qg) - dq.dq * (pv - qv) - dq.dgrad.dot(pg - qg);
    };

    if (spec.dim == 1) {
        return composite_gauss_legendre([&](double t) { return integrand(Vector::Constant(1, t)); }, 0.0,
                                        upper, panels, rule);
    }
    return composite_gauss_legendre(
        [&](double s) {
            return composite_gauss_legendre(
                [&](double t) {
                    Vector x(2);
                    x << s, t;
                    return integrand(x);
                },
                0.0, upper, panels, rule);
        },
        0.0, upper, panels, rule);
}

std::vector<Vector> score_grid(int dim, int points, double lo, double hi) {
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    if (dim < 1 || dim > 10) throw std::invalid_argument("score_grid: dim must be in [1, 10]");
    if (points < 1) throw std::invalid_argument("score_grid: points must be positive");
    if (!(lo < hi)) throw std::invalid_argument("score_grid: empty range");
    auto radical_inverse = [](int index, int base) {
        double inv = 1.0 / base;
        double f = inv;
        double r = 0.0;
        for (; index > 0; index /= base, f *= inv) r += f * (index % base);
        return r;
    };
    std::vector<Vector> grid;
    for (int n = 1; n <= points; ++n) {
        Vector x(dim);
        for (int i = 0; i < dim; ++i) x(i) = lo + (hi - lo) * radical_inverse(n, primes[i]);
        grid.push_back(x);
    }
    return grid;
}

ScoreGridReport score_on_grid(const AlphaSpec& spec, const DensityField<double>& field,
                              const std::vector<Vector>& grid, const ScoreOptions<double>& options) {
    if (grid.empty()) throw std::invalid_argument("score_on_grid: empty grid");
    ScoreGridReport report;
    for (const auto& x : grid) report.abs_scores.push_back(std::abs(score(spec, field, x, options)));
    report.max_abs = *std::max_element(report.abs_scores.begin(), report.abs_scores.end());
    report.min_abs = *std::min_element(report.abs_scores.begin(), report.abs_scores.end());
    return report;
}

} // namespace mlomax
