#include "doctest.h"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "mlomax/errors.hpp"
#include "mlomax/numerics.hpp"

using namespace mlomax;

TEST_SUITE("numerics") {

TEST_CASE("gauss-kronrod is exact on low-degree polynomials without subdividing") {
    // Both embedded rules integrate degree <= 13 exactly, so the error estimate
    // vanishes and a single 15-point panel is accepted.
    for (int p = 0; p <= 13; ++p) {
        const auto r = integrate([p](double x) { return std::pow(x, p); }, -1.0, 2.0);
        const double exact = (std::pow(2.0, p + 1) - std::pow(-1.0, p + 1)) / (p + 1);
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
        CHECK(r.evaluations == 15);
    }
    // the Kronrod extension is exact to degree 22
    const auto r = integrate([](double x) { return std::pow(x, 22); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 23.0).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature on smooth and heavy-tailed integrands") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    const double hi = 1e6;
    const auto r = integrate([](double x) { return 1.0 / ((1.0 + x) * (1.0 + x)); }, 0.0, hi, {},
                             geometric_breakpoints(1.0, hi));
    CHECK(r.value == doctest::Approx(1.0 - 1.0 / (1.0 + hi)).epsilon(1e-12));
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0).value == 0.0);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadrature reports an exhausted budget") {
    QuadratureOptions tight;
    tight.max_intervals = 3;
    tight.rel_tol = 1e-15;
    CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight), QuadratureError);
}

TEST_CASE("geometric breakpoints") {
    const auto b = geometric_breakpoints(1.0, 1e4);
    REQUIRE(b.size() == 3);
    CHECK(b.front() == doctest::Approx(10.0));
    CHECK(b.back() == doctest::Approx(1e3));
    CHECK_THROWS_AS(geometric_breakpoints(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("gauss-legendre rules") {
    for (int n : {1, 2, 5, 10, 20}) {
        const GaussRule rule = gauss_legendre(n);
        CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-13));
        for (int p = 0; p <= 2 * n - 1; ++p) {
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            const double got = (rule.weights.array() * rule.nodes.array().pow(p)).sum();
            CHECK(std::abs(got - exact) < 1e-13);
        }
    }
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    const double v = composite_gauss_legendre([](double x) { return std::exp(-x); }, 0.0, 10.0, 20, gauss_legendre(8));
    CHECK(v == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-14));
}

TEST_CASE("finite differences") {
    auto f = [](double x) { return std::exp(x); };
    CHECK(central_difference(f, 1.0, 1e-5) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
    CHECK(richardson_difference(f, 1.0, 1e-3) == doctest::Approx(std::exp(1.0)).epsilon(1e-11));
}

TEST_CASE("seed derivation is injective over replicate indices") {
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 200000; ++i) seen.insert(derive_seed(1729, i));
    CHECK(seen.size() == 200000);
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("type-7 quantiles") {
    std::vector<double> v(1000);
    for (int i = 0; i < 1000; ++i) v[i] = i + 1;
    CHECK(sorted_quantile(v, 0.5) == doctest::Approx(500.5));
    CHECK(sorted_quantile(v, 0.025) == doctest::Approx(25.975));
    CHECK(sorted_quantile(v, 0.975) == doctest::Approx(975.025));
    CHECK(sorted_quantile(v, 0.0) == 1.0);
    CHECK(sorted_quantile(v, 1.0) == 1000.0);
    CHECK_THROWS_AS(sorted_quantile({}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(sorted_quantile(v, 1.5), std::invalid_argument);
}

} // TEST_SUITE
