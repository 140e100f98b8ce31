#include "doctest.h"

#include <filesystem>
#include <random>

#include "mlomax/io.hpp"

using namespace mlomax;

TEST_SUITE("io") {

TEST_CASE("csv round trip is exact") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    Matrix m(50, 3);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = std::exp(10.0 * normal(rng));
    m(0, 0) = -1e-300;
    const CsvTable t = parse_csv(format_csv({"a", "b", "c"}, m));
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    CHECK(t.values == m);
    CHECK(t.column("c") == 2);
    CHECK_THROWS_AS(t.column("d"), std::out_of_range);
}

TEST_CASE("malformed csv reports the line") {
    bool found = false;
    try {
        parse_csv("x,y\n1,2\n3,abc\n");
    } catch (const std::invalid_argument& e) {
        found = std::string(e.what()).find("line 3") != std::string::npos;
    }
    CHECK(found);
    CHECK_THROWS_AS(parse_csv("x,y\n1,2,3\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(read_csv("/nonexistent/file.csv"), std::runtime_error);
}

TEST_CASE("summary json round trip and re-summarization") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> normal;
    Matrix draws(500, 2);
    for (Eigen::Index i = 0; i < draws.size(); ++i) draws.data()[i] = normal(rng);
    const std::vector<std::string> names{"theta", "beta"};
    const auto summary = summarize(draws, names);
    const std::string json = summary_to_json(summary);
    const auto back = summary_from_json(json);
    REQUIRE(back.size() == 2);
    CHECK(back[1].name == "beta");
    CHECK(back[0].mean == summary[0].mean);
    CHECK(back[1].upper == summary[1].upper);
    CHECK(back[1].ess == summary[1].ess);

    const auto dir = std::filesystem::temp_directory_path() / "mlomax_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "draws.csv").string();
    write_csv(path, names, draws);
    const CsvTable reread = read_csv(path);
    CHECK(summary_to_json(summarize(reread.values, reread.header)) == json);
    std::filesystem::remove_all(dir);
}

} // TEST_SUITE
