#include "mlomax/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "mlomax/errors.hpp"

namespace mlomax {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureOptions& options,
                           const std::vector<double>& breakpoints) {
    if (!(hi > lo)) {
        if (hi == lo) return {};
        throw std::invalid_argument("integrate: upper limit below lower limit");
    }
    std::vector<double> edges{lo};
    for (double b : breakpoints) {
        if (b > edges.back() && b < hi) edges.push_back(b);
    }
    edges.push_back(hi);

    std::priority_queue<Panel> queue;
    double value = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gauss_kronrod_15(f, edges[i], edges[i + 1]);
        value += p.value;
        error += p.error;
        queue.push(p);
    }
    int intervals = static_cast<int>(queue.size());
    while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
        if (intervals >= options.max_intervals) {
            throw QuadratureError("integrate: interval budget exhausted with error estimate " +
                                  std::to_string(error));
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        const Panel left = gauss_kronrod_15(f, worst.lo, mid);
        const Panel right = gauss_kronrod_15(f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    // Recompute the totals to shed the drift from incremental updates.
    value = 0.0;
    error = 0.0;
    while (!queue.empty()) {
        value += queue.top().value;
        error += queue.top().error;
        queue.pop();
    }
    return {value, error, intervals * 15};
}

std::vector<double> geometric_breakpoints(double lo, double hi, double ratio) {
    if (!(lo > 0.0) || !(ratio > 1.0)) {
        throw std::invalid_argument("geometric_breakpoints: need lo > 0 and ratio > 1");
    }
    std::vector<double> out;
    for (double b = lo * ratio; b < hi; b *= ratio) out.push_back(b);
    return out;
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    Matrix jacobi = Matrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        const double b = i / std::sqrt(4.0 * i * i - 1.0);
        jacobi(i, i - 1) = b;
        jacobi(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
    GaussRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

double composite_gauss_legendre(const std::function<double(double)>& f, double lo, double hi,
                                int panels, const GaussRule& rule) {
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double center = lo + (p + 0.5) * width;
        double s = 0.0;
        for (Eigen::Index j = 0; j < rule.nodes.size(); ++j) {
            s += rule.weights[j] * f(center + 0.5 * width * rule.nodes[j]);
        }
        total += 0.5 * width * s;
    }
    return total;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double richardson_difference(const std::function<double(double)>& f, double x, double h) {
    const double coarse = central_difference(f, x, h);
    const double fine = central_difference(f, x, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // index -> master + index * odd constant is injective mod 2^64 and
    // splitmix64 is a bijection, so the composition is injective.
    return splitmix64(master + index * 0xd1b54a32d192ed03ULL);
}

double sorted_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("sorted_quantile: empty sample");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sorted_quantile: p outside [0,1]");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace mlomax
