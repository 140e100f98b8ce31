#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace mlomax {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_intervals = 4000;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// error estimate satisfies max(abs_tol, rel_tol * |value|). Optional interior
/// breakpoints seed the initial partition, which matters for heavy-tailed
/// integrands on long ranges. Throws QuadratureError when max_intervals is
/// exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& options = {},
                           const std::vector<double>& breakpoints = {});

/// Breakpoints lo*ratio^j strictly inside (lo, hi); lo must be positive.
std::vector<double> geometric_breakpoints(double lo, double hi, double ratio = 10.0);

/// Nodes and weights of an n-point rule on [-1, 1].
struct GaussRule {
    Vector nodes;
    Vector weights;
};

/// Gauss-Legendre rule by the Golub-Welsch eigenvalue method.
GaussRule gauss_legendre(int n);

/// Composite Gauss-Legendre over `panels` equal subintervals of [lo, hi].
double composite_gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                                int panels, const GaussRule& rule);

/// Central difference with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Central difference refined by one Richardson step (h and h/2).
double richardson_difference(const std::function<double(double)>& f, double x, double h);

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `index` under `master`. Injective in `index` for a fixed master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Linear interpolation between order statistics (R type 7) on sorted data.
double sorted_quantile(const std::vector<double>& sorted, double p);

} // namespace mlomax
