#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mlomax/experiments.hpp"

using namespace mlomax;

namespace {

ScenarioSpec small_weibull() {
    ScenarioSpec s;
    s.name = "small";
    s.model = Model::weibull;
    s.truth = Eigen::Vector2d(10.0, 1.0);
    s.n = 20;
    s.replicates = 6;
    s.priors = {PriorChoice{"lomax"}, PriorChoice{"weibull-reference"}};
    s.chain.iterations = 2000;
    s.chain.burn_in = 500;
    s.chain.thin = 5;
    return s;
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("relative rmse and coverage examples") {
    const std::vector<double> est{1.1, 0.9, 1.0};
    CHECK(relative_rmse(est, 1.0) == doctest::Approx(std::sqrt(0.02 / 3.0)).epsilon(1e-12));
    CHECK(relative_rmse(std::vector<double>{-2.0}, -1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(relative_rmse(est, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(relative_rmse(std::vector<double>{}, 1.0), std::invalid_argument);

    const std::vector<Interval> iv{{0.0, 1.0}, {1.0, 2.0}, {2.0, 3.0}, {-1.0, 0.5}};
    CHECK(coverage(iv, 1.0) == doctest::Approx(0.5));
    CHECK(coverage(iv, 2.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(coverage(std::vector<Interval>{{2.0, 1.0}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(coverage(std::vector<Interval>{}, 1.0), std::invalid_argument);
}

TEST_CASE("builtin breakdown data") {
    const auto v = builtin_dataset("breakdown34kv");
    CHECK(v.size() == 19);
    CHECK(*std::max_element(v.begin(), v.end()) == doctest::Approx(72.89));
    CHECK(*std::min_element(v.begin(), v.end()) == doctest::Approx(0.19));
    CHECK_THROWS_AS(builtin_dataset("nope"), std::invalid_argument);
}

TEST_CASE("simulated datasets are reproducible and well-formed") {
    const ScenarioSpec s = small_weibull();
    const Dataset a = simulate_dataset(s, 11);
    const Dataset b = simulate_dataset(s, 11);
    CHECK(a.values == b.values);
    CHECK(a.values.size() == 20);
    CHECK(std::all_of(a.values.begin(), a.values.end(), [](double x) { return x > 0.0; }));

    ScenarioSpec lr;
    lr.model = Model::linreg;
    lr.truth = Eigen::Vector4d(20.0, 5.0, -3.0, 2.0);
    lr.n = 50;
    const Dataset d = simulate_dataset(lr, 3);
    CHECK(d.X.rows() == 50);
    CHECK(d.X.cols() == 2);
    CHECK(d.y.size() == 50);
}

TEST_CASE("single replicate coverage is zero or one") {
    ScenarioSpec s = small_weibull();
    s.replicates = 1;
    const MetricsTable t = run_scenario(s);
    CHECK(t.replicates_used == 1);
    for (const auto& row : t.rows) CHECK((row.coverage == 0.0 || row.coverage == 1.0));
}

TEST_CASE("results do not depend on the thread count") {
    ScenarioSpec s = small_weibull();
    s.threads = 1;
    const MetricsTable one = run_scenario(s);
    s.threads = 4;
    const MetricsTable four = run_scenario(s);
    REQUIRE(one.rows.size() == 4);
    REQUIRE(four.rows.size() == 4);
    for (std::size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].rmse == four.rows[i].rmse);
        CHECK(one.rows[i].coverage == four.rows[i].coverage);
        CHECK(one.rows[i].width == four.rows[i].width);
    }
    CHECK(metrics_to_csv(one) == metrics_to_csv(four));
    CHECK(metrics_to_csv(one).rfind("scenario,prior,parameter,rmse,coverage,width\n", 0) == 0);
    CHECK(one.at("lomax", "beta").parameter == "beta");
    CHECK_THROWS_AS(one.at("lomax", "gamma"), std::out_of_range);
}

TEST_CASE("scenario parsing") {
    const ScenarioSpec s = parse_scenario(R"({
        "name": "t", "model": "dagum",
        "truth": {"a": 2.1, "b": 1.0, "p": 1.0},
        "n": 30, "replicates": 10,
        "priors": ["lomax", {"kind": "vague-gamma-product", "gamma_shape": 0.5, "gamma_rate": 0.5}],
        "chain": {"preset": "full", "thin": 25}
    })");
    CHECK(s.name == "t");
    CHECK(s.model == Model::dagum);
    CHECK(s.truth(0) == 2.1);
    CHECK(s.priors.size() == 2);
    CHECK(s.priors[1].gamma_shape == 0.5);
    CHECK(s.chain.iterations == 100000);
    CHECK(s.chain.thin == 25);

    const ScenarioSpec lr = parse_scenario(
        R"({"model": "linreg", "truth": {"beta0": 1, "beta1": 2, "beta2": 3, "sigma2": 1}, "priors": ["zellner-g"]})");
    CHECK(lr.truth.size() == 4);

    bool has_line = false;
    try {
        parse_scenario("{\n\"model\": \"weibull\",\n\"n\": ,\n}");
    } catch (const nlohmann::json::parse_error& e) {
        has_line = std::string(e.what()).find("line 3") != std::string::npos;
    }
    CHECK(has_line);
    CHECK_THROWS_AS(parse_scenario(R"({"model": "gamma", "truth": {}, "priors": ["lomax"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario(R"({"model": "weibull", "truth": {"theta": 1}, "priors": ["lomax"]})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario(R"({"model": "weibull", "truth": {"theta": 1, "beta": 1}, "priors": []})"),
                    std::invalid_argument);
}

TEST_CASE("full-scale settings") {
    ScenarioSpec s = small_weibull();
    apply_full_scale(s);
    CHECK(s.replicates == 250);
    CHECK(s.chain.iterations == 100000);
    CHECK(s.chain.burn_in == 10000);
    CHECK(s.chain.thin == 50);
}

TEST_CASE("scenario validation") {
    ScenarioSpec s = small_weibull();
    s.replicates = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = small_weibull();
    s.truth = Eigen::Vector2d(-1.0, 1.0);
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

} // TEST_SUITE
