#pragma once

// Bregman score machinery for densities on the positive orthant.
//
// With q the density and g = grad q, the generator is
//     phi(q, g) = q * alpha(g / q),   alpha(u) = sum_i u_i^-(k+d),
// and the local score is
//     S(q)(x) = -dphi/dq + sum_i d/dx_i [dphi/dg_i].
// Lomax densities LM(d, k, a) make S vanish identically.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mlomax/errors.hpp"
#include "mlomax/lomax.hpp"

namespace mlomax {

/// Generator parameters. Exponents are integers so that negative arguments
/// (Lomax partials are negative) have a well-defined signed power; the shape
/// is restricted to odd positive integers.
struct AlphaSpec {
    int shape = 1;
    int dim = 1;

    AlphaSpec() = default;
    AlphaSpec(int k, int d) : shape(k), dim(d) {
        if (k < 1 || k % 2 == 0) {
            throw std::invalid_argument("AlphaSpec: shape must be an odd positive integer, got " +
                                        std::to_string(k));
        }
        if (d < 1) throw std::invalid_argument("AlphaSpec: dim must be at least 1");
    }

    int exponent() const { return shape + dim; }
};

namespace detail {

/// u^-m for integer m >= 0 and u != 0.
template <typename Scalar>
Scalar inverse_power(Scalar u, int m) {
    Scalar p(1);
    for (int i = 0; i < m; ++i) p *= u;
    return Scalar(1) / p;
}

} // namespace detail

template <typename Derived>
typename Derived::Scalar alpha(const AlphaSpec& spec, const Eigen::MatrixBase<Derived>& u) {
    using Scalar = typename Derived::Scalar;
    if (u.size() != spec.dim) throw std::invalid_argument("alpha: argument has wrong dimension");
    const int m = spec.exponent();
    Scalar total(0);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (u(i) == Scalar(0)) throw std::domain_error("alpha: singular at a zero coordinate");
        total += detail::inverse_power(Scalar(u(i)), m);
    }
    return total;
}

/// Closed-form determinant of the (diagonal) Hessian of alpha,
/// (k+d)^d (k+d+1)^d prod u_i^-(k+d+2), on the positive orthant.
template <typename Derived>
typename Derived::Scalar alpha_hessian_det(const AlphaSpec& spec, const Eigen::MatrixBase<Derived>& u) {
    using Scalar = typename Derived::Scalar;
    if (u.size() != spec.dim) throw std::invalid_argument("alpha_hessian_det: argument has wrong dimension");
    const int m = spec.exponent();
    Scalar det(1);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (!(u(i) > Scalar(0))) throw std::domain_error("alpha_hessian_det: u must be positive");
        det *= Scalar(m) * Scalar(m + 1) * detail::inverse_power(Scalar(u(i)), m + 2);
    }
    return det;
}

template <typename Scalar>
struct PhiPartials {
    Scalar dq;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dgrad;
};

template <typename Scalar, typename Derived>
Scalar phi(const AlphaSpec& spec, Scalar q, const Eigen::MatrixBase<Derived>& grad) {
    if (!(q > Scalar(0))) throw std::domain_error("phi: density value must be positive");
    return q * alpha(spec, (grad / q).eval());
}

/// Analytic partials: dphi/dq = alpha(u) - sum u_i alpha_i(u), dphi/dg_i = alpha_i(u).
template <typename Scalar, typename Derived>
PhiPartials<Scalar> phi_partials(const AlphaSpec& spec, Scalar q, const Eigen::MatrixBase<Derived>& grad) {
    if (!(q > Scalar(0))) throw std::domain_error("phi_partials: density value must be positive");
    if (grad.size() != spec.dim) throw std::invalid_argument("phi_partials: gradient has wrong dimension");
    const int m = spec.exponent();
    PhiPartials<Scalar> out{Scalar(0), Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(spec.dim)};
    for (int i = 0; i < spec.dim; ++i) {
        const Scalar u = grad(i) / q;
        if (u == Scalar(0)) throw std::domain_error("phi_partials: singular at a zero gradient entry");
        const Scalar pow_m = detail::inverse_power(u, m);
        const Scalar d_alpha = -Scalar(m) * pow_m / u;
        out.dgrad(i) = d_alpha;
        out.dq += pow_m - u * d_alpha;
    }
    return out;
}

/// phi - (q dphi/dq + sum g_i dphi/dg_i), partials by central differences with
/// steps rel_step * |argument|. Zero up to truncation error for a generator
/// homogeneous of degree one.
template <typename Scalar, typename Derived>
Scalar euler_identity_residual(const AlphaSpec& spec, Scalar q, const Eigen::MatrixBase<Derived>& grad,
                               Scalar rel_step = Scalar(1e-5)) {
    using std::abs;
    using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const VectorType g = grad;
    const Scalar value = phi(spec, q, g);

    const Scalar hq = rel_step * abs(q);
    const Scalar dq = (phi(spec, q + hq, g) - phi(spec, q - hq, g)) / (Scalar(2) * hq);
    Scalar euler = q * dq;
    for (int i = 0; i < spec.dim; ++i) {
        const Scalar h = rel_step * abs(g(i));
        VectorType up = g;
        VectorType down = g;
        up(i) += h;
        down(i) -= h;
        euler += g(i) * (phi(spec, q, up) - phi(spec, q, down)) / (Scalar(2) * h);
    }
    return value - euler;
}

/// A density on a subset of the positive orthant together with its gradient.
/// When no analytic gradient is supplied, central differences with step
/// fd_step * max(1, |x_i|) are used.
template <typename Scalar = double>
struct DensityField {
    using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    int dim = 1;
    std::function<Scalar(const VectorType&)> value;
    std::function<VectorType(const VectorType&)> gradient;
    Scalar fd_step = Scalar(1e-5);
    std::string name;

    VectorType grad(const VectorType& x) const {
        if (gradient) return gradient(x);
        using std::abs;
        using std::max;
        VectorType out(dim);
        for (int i = 0; i < dim; ++i) {
            const Scalar h = fd_step * max(Scalar(1), abs(x(i)));
            VectorType up = x;
            VectorType down = x;
            up(i) += h;
            down(i) -= h;
            out(i) = (value(up) - value(down)) / (Scalar(2) * h);
        }
        return out;
    }
};

/// LM(d, k, a) as a field on the open positive orthant (folding is ignored).
template <typename Scalar>
DensityField<Scalar> lomax_field(const LomaxSpec<Scalar>& spec) {
    using VectorType = typename DensityField<Scalar>::VectorType;
    const LomaxSpec<Scalar> plain(spec.dim, spec.shape, spec.scale);
    DensityField<Scalar> field;
    field.dim = spec.dim;
    field.name = "lomax";
    field.value = [plain](const VectorType& x) { return density(plain, x); };
    field.gradient = [plain](const VectorType& x) {
        const Scalar q = density(plain, x);
        const Scalar slope = -(plain.shape + Scalar(plain.dim)) * q / (plain.scale + x.sum());
        return VectorType(VectorType::Constant(plain.dim, slope));
    };
    return field;
}

/// Product of unit exponentials, exp(-sum x_i).
template <typename Scalar = double>
DensityField<Scalar> exponential_field(int dim) {
    using VectorType = typename DensityField<Scalar>::VectorType;
    if (dim < 1) throw std::invalid_argument("exponential_field: dim must be at least 1");
    DensityField<Scalar> field;
    field.dim = dim;
    field.name = "exponential";
    field.value = [](const VectorType& x) {
        using std::exp;
        return exp(-x.sum());
    };
    field.gradient = [dim](const VectorType& x) {
        using std::exp;
        return VectorType(VectorType::Constant(dim, -exp(-x.sum())));
    };
    return field;
}

template <typename Scalar = double>
struct ScoreOptions {
    Scalar rel_step = Scalar(1e-5); ///< outer step is rel_step * max(1, |x_i|)
    bool richardson = false;        ///< refine each outer derivative with one Richardson step
};

/// Local Bregman score of `field` at x. Inner partials of phi are analytic;
/// the outer total derivatives are central differences of x -> dphi/dg_i.
template <typename Scalar>
Scalar score(const AlphaSpec& spec, const DensityField<Scalar>& field,
             const typename DensityField<Scalar>::VectorType& x, const ScoreOptions<Scalar>& options = {}) {
    using std::abs;
    using std::isfinite;
    using std::max;
    using VectorType = typename DensityField<Scalar>::VectorType;
    if (field.dim != spec.dim || x.size() != spec.dim) {
        throw std::invalid_argument("score: field, generator and point dimensions differ");
    }

    auto partials_at = [&](const VectorType& y) {
        const Scalar q = field.value(y);
        if (!(q > Scalar(0)) || !isfinite(q)) {
            throw NumericalBreakdown("score: density underflows or is not finite on the stencil");
        }
        return phi_partials(spec, q, field.grad(y));
    };

    auto outer_derivative = [&](int i, Scalar h) {
        VectorType up = x;
        VectorType down = x;
        up(i) += h;
        down(i) -= h;
        if (!(down(i) > Scalar(0))) throw std::domain_error("score: stencil leaves the positive orthant");
        return (partials_at(up).dgrad(i) - partials_at(down).dgrad(i)) / (Scalar(2) * h);
    };

    Scalar s = -partials_at(x).dq;
    for (int i = 0; i < spec.dim; ++i) {
        const Scalar h = options.rel_step * max(Scalar(1), abs(x(i)));
        Scalar d = outer_derivative(i, h);
        if (options.richardson) d = (Scalar(4) * outer_derivative(i, h / Scalar(2)) - d) / Scalar(3);
        s += d;
    }
    return s;
}

/// Bregman divergence D(p, q) = integral of B_phi(p, q) over [0, upper]^d for
/// d <= 2, by tensor composite Gauss-Legendre.
double bregman_divergence(const AlphaSpec& spec, const DensityField<double>& p,
                          const DensityField<double>& q, double upper, int panels = 200, int order = 8);

/// Deterministic points in [lo, hi]^dim from the Halton sequence (bases 2, 3, 5, ...).
std::vector<Vector> score_grid(int dim, int points = 20, double lo = 0.1, double hi = 3.0);

struct ScoreGridReport {
    std::vector<double> abs_scores;
    double max_abs = 0.0;
    double min_abs = 0.0;
};

ScoreGridReport score_on_grid(const AlphaSpec& spec, const DensityField<double>& field,
                              const std::vector<Vector>& grid, const ScoreOptions<double>& options = {});

} // namespace mlomax
