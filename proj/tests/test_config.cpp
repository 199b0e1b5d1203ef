#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fracstefan/run_config.hpp"

using namespace fracstefan;

TEST_CASE("defaults are a valid textbook configuration") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.problem.alpha == 0.75);
    CHECK(c.problem.u0 == 1.5);
    CHECK(c.problem.um == 0.0);
    CHECK(c.problem.ui == -0.5);
    CHECK(c.tol == 1e-10);
    CHECK(c.scan_max == 50.0);
}

TEST_CASE("serialize / parse round trip is field-identical") {
    RunConfig c;
    c.problem.alpha = 0.5;
    c.problem.k1 = 2.25;
    c.problem.ui = -0.125;
    c.eval.series_terms_max = 512;
    c.eval.crossover_x = 9.5;
    c.eval.target_rel_err = 1e-9;
    c.tol = 1e-8;
    c.scan_max = 20.0;
    c.output.format = OutputFormat::Json;
    c.output.path = "out.json";
    c.output.x_min = 0.25;
    c.output.x_max = 6.0;
    c.output.n_x = 77;
    c.output.times = {0.25, 1.0, 3.5};

    const RunConfig back = RunConfig::from_json(c.to_json());
    CHECK(back == c);
    // and the default round-trips too
    CHECK(RunConfig::from_json(RunConfig{}.to_json()) == RunConfig{});
}

TEST_CASE("parse rejections carry the violated constraint") {
    auto parse = [](const char* text) { return RunConfig::from_json(nlohmann::json::parse(text)); };

    CHECK_THROWS_WITH_AS(parse(R"({"uy": 1})"), doctest::Contains("unknown key 'uy'"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"ui": 0.3, "um": 0.0})"), doctest::Contains("ui < um"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"um": 7.0})"), doctest::Contains("um < u0"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"k2": -1})"), doctest::Contains("k2 must be positive"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse(R"({"alpha": 1.5})"), doctest::Contains("0 < alpha <= 1"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"format": "xml"})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"tol": 0.1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"scan_max": -5})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"n_x": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"x_min": 2, "x_max": 1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"times": []})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"times": [1.0, -2.0]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"series_terms_max": 10})"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"([1,2,3])"), std::invalid_argument);
    CHECK_THROWS_AS(parse(R"({"alpha": "half"})"), std::invalid_argument);
}

TEST_CASE("file loading") {
    const char* path = "test_config_tmp.json";
    {
        std::ofstream out(path);
        out << R"({"alpha": 0.5, "u0": 2.0, "times": [1.0]})";
    }
    const RunConfig c = RunConfig::load_file(path);
    CHECK(c.problem.alpha == 0.5);
    CHECK(c.problem.u0 == 2.0);
    CHECK(c.output.times == std::vector<double>{1.0});
    std::remove(path);
    CHECK_THROWS_AS(RunConfig::load_file("does_not_exist.json"), std::invalid_argument);

    const char* bad_path = "test_config_bad.json";
    {
        std::ofstream out(bad_path);
        out << "{ not json";
    }
    CHECK_THROWS_AS(RunConfig::load_file(bad_path), std::invalid_argument);
    std::remove(bad_path);
}

TEST_CASE("format_double: 17 significant digits, point decimal") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(-2.0) == "-2");
    // round-trips the double exactly
    for (double v : {0.1, 3.14159265358979, 1.0e-17, 123456.789, 1e30}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}
