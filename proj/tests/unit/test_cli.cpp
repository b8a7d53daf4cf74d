#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hyperext/commands.hpp"
#include "hyperext/config.hpp"
#include "hyperext/verify.hpp"

using namespace hyperext;
using nlohmann::json;

namespace {

RunConfig small_config() {
    RunConfig c = default_run_config();
    c.sampling.samples = 200;
    c.sampling.grid_per_axis = 5;
    c.verify = {300, 300, 200, 3000, 20};
    c.probe.centers = 20;
    return c;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string& header) {
    std::istringstream in(text);
    std::getline(in, header);
    std::vector<std::vector<double>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<double> row;
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("run config parsing") {
    SUBCASE("round trip of the documented keys") {
        const auto j = json::parse(R"({
            "model": {"dim": 3, "lambda": 1.5},
            "boundary_map": {"family": "composite", "maps": [
                {"family": "angle_warp", "a": 0.1, "k": 2},
                {"family": "mobius", "translate_axis": [0, 1, 0], "translate_distance": 0.5}]},
            "interior_map": {"family": "jittered_isometry", "amplitude": 0.2},
            "extension": {"p": [0, 0, -1], "equator_samples": 128},
            "sampling": {"seed": 7, "samples": 50, "radius": 3, "threads": 2},
            "probe": {"eps_grid": [0.5, 0.05], "centers": 10, "directions": 4},
            "net": {"a": 0.5, "radius": 2, "sample_size": 500},
            "verify": {"graphs": 5},
            "output": {"path": "x.json"}
        })");
        const RunConfig c = parse_run_config(j);
        CHECK(c.dim == 3);
        CHECK(c.lambda == 1.5);
        REQUIRE(c.boundary_map);
        CHECK(c.boundary_map->parts.size() == 2);
        CHECK(c.equator_samples == 128);
        CHECK(c.sampling.seed == 7);
        CHECK(c.probe.eps_grid.size() == 2);
        CHECK(c.verify.graphs == 5);
        CHECK(c.verify.triangles == VerifyConfig{}.triangles);
        CHECK(c.out == "x.json");
        CHECK_NOTHROW(c.validate());
        CHECK(build_boundary_map(*c.boundary_map, c.k(), c.dim).declared_L() == doctest::Approx(1.25));
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"model": {"lambda": 0.5}})")).validate(), ConfigError);
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"modle": {}})")), ConfigError);
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"sampling": {"samples": -3}})")), ConfigError);
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"boundary_map": {"family": "spiral"}})")).validate(),
                        ConfigError);
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"boundary_map": {"family": "angle_warp", "a": 0.6, "k": 2}})"))
                            .validate(),
                        ConfigError);
        CHECK_THROWS_AS(parse_run_config(json::parse(R"({"extension": {"p": [0, 0, 1]}})")).validate(), ConfigError);
        CHECK_THROWS_AS(load_run_config("/nonexistent/config.json"), ConfigError);
    }
}

TEST_CASE("cmd_verify") {
    SUBCASE("small run passes and is flagged low power") {
        std::ostringstream out, err;
        CHECK(cmd_verify(small_config(), out, err) == kExitPass);
        const auto report = json::parse(out.str());
        CHECK(report["passed"] == true);
        CHECK(report["low_power"] == true);
        for (const auto& row : report["checks"]) {
            CHECK(row.contains("threshold"));
            CHECK(row.contains("measured"));
            CHECK_FALSE(row.contains("wall_seconds"));
        }
    }
    SUBCASE("lambda below one is a usage error") {
        RunConfig c = small_config();
        c.lambda = 0.5;
        std::ostringstream out, err;
        CHECK(cmd_verify(c, out, err) == kExitUsage);
        CHECK(err.str().find("lambda") != std::string::npos);
    }
    SUBCASE("a failing check gives exit 1 and names it") {
        // Forward modulus at eps = 0.5 cannot be below 1e-2.
        RunConfig c = small_config();
        c.probe.eps_grid = {0.5};
        std::ostringstream out, err;
        CHECK(cmd_verify(c, out, err) == kExitFailure);
        CHECK(err.str().find("forward_modulus/angle_warp") != std::string::npos);
    }
    SUBCASE("deterministic") {
        std::ostringstream a, b, err;
        RunConfig c = small_config();
        cmd_verify(c, a, err);
        c.sampling.threads = 3;
        cmd_verify(c, b, err);
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("cmd_extend") {
    RunConfig c = small_config();
    SUBCASE("identity reproduces the grid") {
        c.boundary_map = MapSpec{};
        std::ostringstream out, err;
        REQUIRE(cmd_extend(c, out, err) == kExitPass);
        std::string header;
        const auto rows = parse_csv(out.str(), header);
        CHECK(header == "x1,x2,F1,F2,t_x,span_length");
        CHECK(rows.size() >= 5);
        for (const auto& r : rows) {
            CHECK(r[2] == doctest::Approx(r[0]).epsilon(1e-11));
            CHECK(r[3] == doctest::Approx(r[1]).epsilon(1e-11));
        }
    }
    SUBCASE("mobius map gives the isometry images") {
        MapSpec m;
        m.family = "mobius";
        m.translate_axis = {1, 1, 0};
        m.translate_distance = 0.8;
        m.rotate_angle = 0.3;
        c.boundary_map = m;
        std::ostringstream out, err;
        REQUIRE(cmd_extend(c, out, err) == kExitPass);
        std::string header;
        const auto g = build_isometry(m, c.k());
        for (const auto& r : parse_csv(out.str(), header)) {
            const BallPoint fx(Vec3{r[2], r[3], 0.0});
            CHECK(hyp_dist(c.k(), fx, g(BallPoint(Vec3{r[0], r[1], 0.0}))) < 1e-5);
        }
    }
    SUBCASE("same seed gives identical output") {
        std::ostringstream a, b, err;
        cmd_extend(c, a, err);
        cmd_extend(c, b, err);
        CHECK(a.str() == b.str());
    }
    SUBCASE("missing boundary map is a usage error") {
        c.boundary_map.reset();
        std::ostringstream out, err;
        CHECK(cmd_extend(c, out, err) == kExitUsage);
    }
}

TEST_CASE("cmd_probe") {
    RunConfig c = small_config();
    c.boundary_map = MapSpec{};
    c.probe.eps_grid = {0.5, 0.1, 0.01};
    std::ostringstream out, err;
    REQUIRE(cmd_probe(c, out, err) == kExitPass);
    std::string header;
    const auto rows = parse_csv(out.str(), header);
    CHECK(header == "eps,omega,delta");
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r[1] == doctest::Approx(r[0]).epsilon(1e-9));
        CHECK(r[2] == doctest::Approx(r[0]).epsilon(1e-9));
    }
}

TEST_CASE("cmd_color") {
    std::istringstream p5("0 1\n1 2\n2 3\n3 4\n");
    std::ostringstream out, err;
    CHECK(cmd_color(p5, out, err) == kExitPass);
    CHECK(out.str() == "[1,2,1,2,1]\n");
    std::istringstream bad("0 0\n");
    std::ostringstream out2, err2;
    CHECK(cmd_color(bad, out2, err2) == kExitFailure);
    std::istringstream junk("zero one\n");
    CHECK(cmd_color(junk, out2, err2) == kExitUsage);
}

TEST_CASE("cmd_net") {
    RunConfig c = small_config();
    c.net = {0.8, 2.0, 2000};
    std::ostringstream out, err;
    REQUIRE(cmd_net(c, out, err) == kExitPass);
    const auto j = json::parse(out.str());
    CHECK(j["count"].get<std::size_t>() == j["points"].size());
    CHECK(j["b"].get<double>() < 0.8);
    c.net.a = 5.0;
    std::ostringstream single;
    REQUIRE(cmd_net(c, single, err) == kExitPass);
    CHECK(json::parse(single.str())["count"] == 1);
}
