#include <cstdio>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ppgate/config.hpp"

using namespace ppgate;

TEST_CASE("pi expression parsing") {
    CHECK(parse_pi_expression("pi") == doctest::Approx(M_PI));
    CHECK(parse_pi_expression("-pi/2") == doctest::Approx(-M_PI / 2));
    CHECK(parse_pi_expression("3pi/4") == doctest::Approx(3 * M_PI / 4));
    CHECK(parse_pi_expression("0.5pi") == doctest::Approx(M_PI / 2));
    CHECK(parse_pi_expression("1.25") == doctest::Approx(1.25));
    CHECK_THROWS_AS(parse_pi_expression("pi*junk"), usage_error);
    CHECK_THROWS_AS(parse_pi_expression(""), usage_error);
}

TEST_CASE("defaults reproduce the reference geometry") {
    RunConfig cfg;
    GateGeometry geo = cfg.geometry();
    CHECK(geo.sigma / geo.lambda == doctest::Approx(10.0));
    CHECK(geo.l_hat() == doctest::Approx(4 * M_PI));
    CHECK(geo.l_over_r() == doctest::Approx(0.2));
    CHECK(geo.D == 0.0);
}

TEST_CASE("key setting and overrides") {
    RunConfig cfg;
    cfg.set("R", "26");
    cfg.set("kind", "contact-regularized");
    cfg.set("include_diffraction", "off");
    cfg.apply_override("--g=1.5");
    CHECK(cfg.R == 26.0);
    CHECK(cfg.kind == "contact-regularized");
    CHECK_FALSE(cfg.include_diffraction);
    CHECK(cfg.g == 1.5);
    CHECK_THROWS_AS(cfg.set("bogus", "1"), usage_error);
    CHECK_THROWS_AS(cfg.set("g", "abc"), usage_error);
    CHECK_THROWS_AS(cfg.set("kind", "bogus"), usage_error);
    CHECK_THROWS_AS(cfg.apply_override("-g=1"), usage_error);
    CHECK_THROWS_AS(cfg.apply_override("--g"), usage_error);
}

TEST_CASE("config file loading skips sections and comments") {
    std::string path = "/tmp/ppgate_test_config.ini";
    {
        std::ofstream f(path);
        f << "# comment\n[geometry]\nR = 12\n\n[interaction]\ng = 0.25\ntarget_phase = pi/2\n";
    }
    RunConfig cfg;
    cfg.load_file(path);
    CHECK(cfg.R == 12.0);
    CHECK(cfg.g == 0.25);
    CHECK(cfg.target_phase_value() == doctest::Approx(M_PI / 2));
    std::remove(path.c_str());
    CHECK_THROWS_AS(cfg.load_file("/nonexistent/path.ini"), usage_error);
}

TEST_CASE("strength grid starts at zero and is geometric") {
    RunConfig cfg;
    cfg.g_points = 5;
    auto grid = cfg.g_grid();
    REQUIRE(grid.size() == 6);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == doctest::Approx(cfg.g_min));
    CHECK(grid[5] == doctest::Approx(cfg.g_max));
    double r1 = grid[2] / grid[1], r2 = grid[4] / grid[3];
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
}

TEST_CASE("R list parsing") {
    RunConfig cfg;
    cfg.R_list = " 26, 40 ,56,79 ";
    auto v = cfg.R_values();
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 26.0);
    CHECK(v[3] == 79.0);
    cfg.R_list = " , ";
    CHECK_THROWS_AS(cfg.R_values(), usage_error);
}

TEST_CASE("emitted floats round-trip exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng) * std::pow(10.0, int(rng() % 13) - 6);
        CHECK(std::stod(format_float(x)) == x);
    }
}

TEST_CASE("resolved config carries the artifact version") {
    RunConfig cfg;
    auto kv = cfg.resolved();
    REQUIRE_FALSE(kv.empty());
    CHECK(kv.front().first == "version");
    CHECK(kv.front().second.rfind("ppgate ", 0) == 0);
}

TEST_CASE("svg plot is self-contained") {
    std::string svg = svg_line_plot({{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.25}}, "x", "y", "t");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("http://www.w3.org/2000/svg") != std::string::npos);
    CHECK(svg.find("href") == std::string::npos);
}
