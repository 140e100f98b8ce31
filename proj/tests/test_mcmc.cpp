#include "doctest.h"

#include <cmath>
#include <random>

#include "mlomax/lomax.hpp"
#include "mlomax/mcmc.hpp"
#include "oracles.hpp"

using namespace mlomax;

namespace {

PosteriorTarget gaussian_target(int dim) {
    PosteriorTarget t;
    t.support.assign(static_cast<std::size_t>(dim), Support::real_line);
    for (int i = 0; i < dim; ++i) t.names.push_back("z" + std::to_string(i + 1));
    t.log_density = [](const Vector& x) { return -0.5 * x.squaredNorm(); };
    return t;
}

PosteriorTarget lomax_target(double k, double a) {
    PosteriorTarget t;
    t.support = {Support::positive};
    t.names = {"x"};
    const LomaxSpecd spec(1, k, a);
    t.log_density = [spec](const Vector& x) { return log_density(spec, x); };
    return t;
}

ChainConfig config(int iterations, int burn_in, int thin, Vector initial, std::uint64_t seed = 1729) {
    ChainConfig c;
    c.iterations = iterations;
    c.burn_in = burn_in;
    c.thin = thin;
    c.initial = std::move(initial);
    c.seed = seed;
    return c;
}

} // namespace

TEST_SUITE("mcmc") {

TEST_CASE("bivariate gaussian target") {
    const ChainOutput out = run_chain(gaussian_target(2), config(60000, 5000, 5, Vector::Zero(2)));
    const auto summary = summarize(out);
    for (const auto& s : summary) {
        const double mcse = std::sqrt(s.variance / s.ess);
        CHECK(std::abs(s.mean) < 3.0 * mcse);
        CHECK(s.variance == doctest::Approx(1.0).epsilon(0.05));
    }
    CHECK((out.acceptance.array() >= 0.0).all());
    CHECK((out.acceptance.array() <= 1.0).all());
}

TEST_CASE("univariate lomax target reproduces its cdf") {
    const ChainOutput out = run_chain(lomax_target(3.0, 1.0), config(100000, 10000, 10, Vector::Constant(1, 0.5)));
    std::vector<double> draws(out.draws.data(), out.draws.data() + out.draws.size());
    CHECK(oracle::ks_distance(draws, [](double x) { return univariate_cdf(3.0, 1.0, x); }) < 0.02);
    CHECK((out.draws.array() > 0.0).all());
}

TEST_CASE("identical seeds give bit-identical chains") {
    const auto cfg = config(5000, 1000, 3, Vector::Zero(3), 99);
    const ChainOutput a = run_chain(gaussian_target(3), cfg);
    const ChainOutput b = run_chain(gaussian_target(3), cfg);
    CHECK(a.draws == b.draws);
    CHECK(a.acceptance == b.acceptance);
    CHECK(a.steps == b.steps);
    auto other = cfg;
    other.seed = 100;
    CHECK_FALSE(run_chain(gaussian_target(3), other).draws == a.draws);
}

TEST_CASE("retained draw count") {
    for (auto [it, burn, thin] : {std::tuple{1000, 100, 7}, std::tuple{1000, 0, 1}, std::tuple{20000, 5000, 10},
                                  std::tuple{101, 100, 1}}) {
        const auto cfg = config(it, burn, thin, Vector::Zero(1));
        CHECK(retained_count(cfg) == (it - burn) / thin);
        CHECK(run_chain(gaussian_target(1), cfg).draws.rows() == (it - burn) / thin);
    }
    CHECK(retained_count(short_chain_preset()) == 1500);
    CHECK(retained_count(full_chain_preset()) == 1800);
}

TEST_CASE("chain configuration errors") {
    CHECK_THROWS_AS(run_chain(gaussian_target(1), config(100, 100, 1, Vector::Zero(1))), std::invalid_argument);
    CHECK_THROWS_AS(run_chain(gaussian_target(1), config(100, 10, 0, Vector::Zero(1))), std::invalid_argument);
    CHECK_THROWS_AS(run_chain(gaussian_target(2), config(100, 10, 1, Vector::Zero(1))), std::invalid_argument);
    CHECK_THROWS_AS(run_chain(lomax_target(1.0, 1.0), config(100, 10, 1, Vector::Constant(1, -1.0))),
                    std::invalid_argument);
    auto bad_steps = config(100, 10, 1, Vector::Zero(1));
    bad_steps.steps = Vector::Constant(1, -0.1);
    CHECK_THROWS_AS(run_chain(gaussian_target(1), bad_steps), std::invalid_argument);
}

TEST_CASE("step adaptation rule") {
    const Vector steps = Vector::Constant(3, 1.0);
    const Vector adapted = adapt_steps(steps, Eigen::Vector3d(0.9, 0.05, 0.35));
    CHECK(adapted(0) == doctest::Approx(1.2));
    CHECK(adapted(1) == doctest::Approx(1.0 / 1.2));
    CHECK(adapted(2) == 1.0);
    CHECK_THROWS_AS(adapt_steps(steps, Eigen::Vector2d(0.1, 0.1)), std::invalid_argument);
}

TEST_CASE("steps are frozen after burn-in") {
    auto cfg = config(3000, 1000, 1, Vector::Zero(1));
    cfg.steps = Vector::Constant(1, 50.0); // far too wide: adaptation must shrink it
    const ChainOutput adapted = run_chain(gaussian_target(1), cfg);
    CHECK(adapted.steps(0) < 50.0);
    cfg.adapt = false;
    CHECK(run_chain(gaussian_target(1), cfg).steps(0) == 50.0);
}

TEST_CASE("summaries") {
    const Matrix constant = Matrix::Constant(200, 1, 4.5);
    const auto c = summarize(constant, {"v"});
    CHECK(c[0].mean == 4.5);
    CHECK(c[0].median == 4.5);
    CHECK(c[0].variance == 0.0);
    CHECK(c[0].lower == 4.5);
    CHECK(c[0].upper == 4.5);

    Matrix seq(1000, 1);
    for (int i = 0; i < 1000; ++i) seq(i, 0) = i + 1;
    const auto s = summarize(seq, {"k"});
    CHECK(s[0].median == doctest::Approx(500.5));
    CHECK(s[0].lower == doctest::Approx(25.975));
    CHECK(s[0].upper == doctest::Approx(975.025));

    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Matrix z(100000, 1);
    for (int i = 0; i < z.rows(); ++i) z(i, 0) = normal(rng);
    const auto n = summarize(z, {"z"});
    CHECK(std::abs(n[0].lower + 1.96) < 0.03);
    CHECK(std::abs(n[0].upper - 1.96) < 0.03);
    CHECK(n[0].ess == doctest::Approx(100000).epsilon(0.1));

    CHECK_THROWS_AS(summarize(Matrix::Zero(99, 1), {"x"}), std::invalid_argument);
}

TEST_CASE("stationary occupancy on a discretizable target") {
    // Piecewise-constant density on [0, 4) with bin masses 0.1, 0.2, 0.3, 0.4.
    const std::vector<double> mass{0.1, 0.2, 0.3, 0.4};
    PosteriorTarget t;
    t.support = {Support::real_line};
    t.log_density = [&mass](const Vector& x) -> double {
        const double v = x(0);
        if (v < 0.0 || v >= 4.0) return -INFINITY;
        return std::log(mass[static_cast<std::size_t>(v)]);
    };
    auto cfg = config(400000, 10000, 2, Vector::Constant(1, 2.5));
    cfg.steps = Vector::Constant(1, 1.5);
    const ChainOutput out = run_chain(t, cfg);
    std::vector<double> occupancy(4, 0.0);
    for (Eigen::Index i = 0; i < out.draws.rows(); ++i) occupancy[static_cast<std::size_t>(out.draws(i, 0))] += 1.0;
    double tv = 0.0;
    for (std::size_t b = 0; b < 4; ++b) tv += 0.5 * std::abs(occupancy[b] / out.draws.rows() - mass[b]);
    CHECK(tv < 0.02);
}

TEST_CASE("effective sample size") {
    Vector iid(2000);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> normal;
    for (int i = 0; i < iid.size(); ++i) iid(i) = normal(rng);
    CHECK(effective_sample_size(iid) > 1500);
    Vector ar(2000);
    ar(0) = 0.0;
    for (int i = 1; i < ar.size(); ++i) ar(i) = 0.95 * ar(i - 1) + normal(rng);
    CHECK(effective_sample_size(ar) < 200);
}

} // TEST_SUITE
