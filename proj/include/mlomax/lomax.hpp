#pragma once

// Multivariate Lomax family LM(d, k, a) with density
//
//     q(x) = a^k k (k+1) ... (k+d-1) / (a + x_1 + ... + x_d)^(k+d)
//
// on the positive orthant. A "folded" coordinate has support on the whole
// real line: it enters the density through |x_i| and halves the normalizer.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mlomax/errors.hpp"
#include "mlomax/numerics.hpp"

namespace mlomax {

template <typename Scalar = double>
struct LomaxSpec {
    using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    int dim = 1;
    Scalar shape = Scalar(1);
    Scalar scale = Scalar(1);
    std::vector<int> folded; ///< zero-based coordinate indices, sorted and unique

    LomaxSpec() = default;
    LomaxSpec(int d, Scalar k, Scalar a, std::vector<int> folded_coords = {})
        : dim(d), shape(k), scale(a), folded(std::move(folded_coords)) {
        std::sort(folded.begin(), folded.end());
        folded.erase(std::unique(folded.begin(), folded.end()), folded.end());
        validate();
    }

    void validate() const {
        if (dim < 1) throw std::invalid_argument("LomaxSpec: dim must be at least 1");
        if (!(shape > Scalar(0))) throw std::invalid_argument("LomaxSpec: shape must be positive");
        if (!(scale > Scalar(0))) throw std::invalid_argument("LomaxSpec: scale must be positive");
        for (int i : folded) {
            if (i < 0 || i >= dim) {
                throw std::invalid_argument("LomaxSpec: folded index out of range");
            }
        }
    }

    bool is_folded(int i) const { return std::binary_search(folded.begin(), folded.end(), i); }

    bool operator==(const LomaxSpec&) const = default;
};

using LomaxSpecd = LomaxSpec<double>;

template <typename Scalar>
Scalar log_normalizing_constant(const LomaxSpec<Scalar>& spec) {
    using std::log;
    Scalar out = spec.shape * log(spec.scale);
    for (int j = 0; j < spec.dim; ++j) out += log(spec.shape + Scalar(j));
    return out - Scalar(spec.folded.size()) * log(Scalar(2));
}

template <typename Scalar>
Scalar normalizing_constant(const LomaxSpec<Scalar>& spec) {
    using std::exp;
    return exp(log_normalizing_constant(spec));
}

/// Sum of the coordinates entering the density, |x_i| for folded ones.
/// Throws std::domain_error if an unfolded coordinate is not positive.
template <typename Scalar, typename Derived>
Scalar lomax_coordinate_sum(const LomaxSpec<Scalar>& spec, const Eigen::MatrixBase<Derived>& x) {
    if (x.size() != spec.dim) throw std::invalid_argument("lomax: point has wrong dimension");
    Scalar s(0);
    for (int i = 0; i < spec.dim; ++i) {
        const Scalar xi = x(i);
        if (spec.is_folded(i)) {
            s += std::abs(xi);
        } else {
            if (!(xi > Scalar(0))) throw std::domain_error("lomax: unfolded coordinate must be positive");
            s += xi;
        }
    }
    return s;
}

template <typename Scalar, typename Derived>
Scalar log_density(const LomaxSpec<Scalar>& spec, const Eigen::MatrixBase<Derived>& x) {
    using std::log;
    const Scalar s = lomax_coordinate_sum(spec, x);
    return log_normalizing_constant(spec) - (spec.shape + Scalar(spec.dim)) * log(spec.scale + s);
}

template <typename Scalar, typename Derived>
Scalar density(const LomaxSpec<Scalar>& spec, const Eigen::MatrixBase<Derived>& x) {
    using std::exp;
    return exp(log_density(spec, x));
}

namespace detail {

inline void check_index_set(const std::vector<int>& idx, int dim, const char* what) {
    std::set<int> seen;
    for (int i : idx) {
        if (i < 0 || i >= dim) throw std::invalid_argument(std::string(what) + ": index out of range");
        if (!seen.insert(i).second) throw std::invalid_argument(std::string(what) + ": repeated index");
    }
}

template <typename Scalar>
std::vector<int> restrict_folded(const LomaxSpec<Scalar>& spec, const std::vector<int>& subset) {
    std::vector<int> out;
    for (std::size_t pos = 0; pos < subset.size(); ++pos) {
        if (spec.is_folded(subset[pos])) out.push_back(static_cast<int>(pos));
    }
    return out;
}

} // namespace detail

/// Marginal of the coordinates in `subset` (zero-based; order defines the
/// coordinate order of the result).
template <typename Scalar>
LomaxSpec<Scalar> marginal(const LomaxSpec<Scalar>& spec, const std::vector<int>& subset) {
    if (subset.empty()) throw std::invalid_argument("marginal: empty coordinate subset");
    detail::check_index_set(subset, spec.dim, "marginal");
    return LomaxSpec<Scalar>(static_cast<int>(subset.size()), spec.shape, spec.scale,
                             detail::restrict_folded(spec, subset));
}

/// Conditional law of the coordinates in `kept` given `observed` values on
/// `given`. The two index sets must partition {0, ..., d-1}; `observed[j]` is
/// the value of coordinate given[j].
template <typename Scalar, typename Derived>
LomaxSpec<Scalar> conditional(const LomaxSpec<Scalar>& spec, const std::vector<int>& kept,
                              const std::vector<int>& given,
                              const Eigen::MatrixBase<Derived>& observed) {
    if (kept.empty()) throw std::invalid_argument("conditional: empty coordinate subset");
    detail::check_index_set(kept, spec.dim, "conditional");
    detail::check_index_set(given, spec.dim, "conditional");
    if (kept.size() + given.size() != static_cast<std::size_t>(spec.dim)) {
        throw std::invalid_argument("conditional: index sets do not cover every coordinate");
    }
    for (int i : kept) {
        if (std::find(given.begin(), given.end(), i) != given.end()) {
            throw std::invalid_argument("conditional: index sets overlap");
        }
    }
    if (observed.size() != static_cast<Eigen::Index>(given.size())) {
        throw std::invalid_argument("conditional: one observed value per conditioning index");
    }
    Scalar shift(0);
    for (std::size_t j = 0; j < given.size(); ++j) {
        const Scalar v = observed(static_cast<Eigen::Index>(j));
        if (spec.is_folded(given[j])) {
            shift += std::abs(v);
        } else {
            if (!(v > Scalar(0))) throw std::domain_error("conditional: observed value outside support");
            shift += v;
        }
    }
    const int kept_dim = static_cast<int>(kept.size());
    return LomaxSpec<Scalar>(kept_dim, spec.shape + Scalar(spec.dim - kept_dim), spec.scale + shift,
                             detail::restrict_folded(spec, kept));
}

/// CDF of the univariate Lomax LM(1, k, a) on x >= 0.
template <typename Scalar>
Scalar univariate_cdf(Scalar k, Scalar a, Scalar x) {
    using std::pow;
    if (x <= Scalar(0)) return Scalar(0);
    return Scalar(1) - pow(a / (a + x), k);
}

template <typename Scalar>
Scalar univariate_quantile(Scalar k, Scalar a, Scalar u) {
    using std::expm1;
    using std::log1p;
    if (!(k > Scalar(0)) || !(a > Scalar(0))) {
        throw std::invalid_argument("univariate_quantile: k and a must be positive");
    }
    if (!(u >= Scalar(0) && u < Scalar(1))) {
        throw std::domain_error("univariate_quantile: probability must lie in [0, 1)");
    }
    // a((1-u)^(-1/k) - 1), written to keep precision for small u
    return a * expm1(-log1p(-u) / k);
}

/// One draw: x_1 from LM(1,k,a), then each x_{j+1} from its conditional given
/// x_1..x_j, then an independent random sign on every folded coordinate.
template <typename Scalar, typename Rng>
typename LomaxSpec<Scalar>::VectorType sample(const LomaxSpec<Scalar>& spec, Rng& rng) {
    std::uniform_real_distribution<Scalar> unif(Scalar(0), Scalar(1));
    typename LomaxSpec<Scalar>::VectorType x(spec.dim);
    Scalar running = spec.scale;
    for (int j = 0; j < spec.dim; ++j) {
        x(j) = univariate_quantile(spec.shape + Scalar(j), running, unif(rng));
        running += x(j);
    }
    for (int i : spec.folded) {
        if (unif(rng) < Scalar(0.5)) x(i) = -x(i);
    }
    return x;
}

/// I(k) = log k + 1 + 1/k for the univariate a = 1 member; minimized at k = 1.
template <typename Scalar>
Scalar entropy(Scalar k) {
    using std::log;
    if (!(k > Scalar(0))) throw std::invalid_argument("entropy: k must be positive");
    return log(k) + Scalar(1) + Scalar(1) / k;
}

template <typename Scalar>
struct MarginalMoments {
    Scalar mean;
    std::optional<Scalar> variance; ///< exists only for k > 2
};

template <typename Scalar>
MarginalMoments<Scalar> marginal_moments(const LomaxSpec<Scalar>& spec) {
    if (spec.dim != 1) throw std::invalid_argument("marginal_moments: univariate spec required");
    if (!spec.folded.empty()) throw std::invalid_argument("marginal_moments: unfolded spec required");
    const Scalar k = spec.shape;
    const Scalar a = spec.scale;
    if (!(k > Scalar(1))) throw std::domain_error("marginal_moments: mean requires k > 1");
    MarginalMoments<Scalar> out{a / (k - Scalar(1)), std::nullopt};
    if (k > Scalar(2)) out.variance = a * a * k / ((k - Scalar(1)) * (k - Scalar(1)) * (k - Scalar(2)));
    return out;
}

/// Closed form of the folded LM(d,1,1) density, d!/2^d (1 + sum|x_j|)^-(d+1).
double folded_unit_lomax_density(const Vector& x);

struct MixtureQuadrature {
    int panels = 400;
    int order = 10;
    double truncation = 80.0; ///< integrate s over [0, truncation / (1 + sum|x|)]
    double tolerance = 1e-6;  ///< accepted relative residual against the closed form
};

/// Numerical value of the integral over s > 0 of prod_j (s/2) exp(-s|x_j|) times exp(-s),
/// a rate-s Laplace product mixed over a unit exponential. Throws QuadratureError
/// if it departs from folded_unit_lomax_density by more than the tolerance.
double laplace_mixture_density(int dim, const Vector& x, const MixtureQuadrature& quadrature = {});

/// Plain-text record: lines "dim=", "shape=", "scale=", "folded=" with
/// one-based comma-separated indices.
std::string to_record(const LomaxSpecd& spec);
LomaxSpecd parse_record(const std::string& text);

} // namespace mlomax
