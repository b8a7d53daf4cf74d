#pragma once

// JSON run configuration for the command-line front end.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperext/extension.hpp"
#include "hyperext/maps.hpp"
#include "json.hpp"

namespace hyperext {

// Boundary or interior map family with its parameters. Families:
//   boundary: identity, mobius, angle_warp, latitude_warp, composite
//   interior: mobius, jittered_isometry, polar_warp
// mobius (and the isometry under jittered_isometry) is the translation along
// translate_axis by translate_distance after the rotation about rotate_axis.
struct MapSpec {
    std::string family = "identity";
    double a = 0.2;
    int k = 1;
    Vec3 translate_axis{1.0, 0.0, 0.0};
    double translate_distance = 0.0;
    Vec3 rotate_axis{0.0, 0.0, 1.0};
    double rotate_angle = 0.0;
    double amplitude = 0.3;
    std::vector<MapSpec> parts;  // composite, applied front first
};

MobiusIsometry build_isometry(const MapSpec& spec, const CurvatureScale& k);
BoundaryMap build_boundary_map(const MapSpec& spec, const CurvatureScale& k, int dim);
InteriorMap build_interior_map(const MapSpec& spec, const CurvatureScale& k, int dim);

struct SamplingConfig {
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    double radius = 4.0;
    int grid_per_axis = 10;
    unsigned threads = 1;
};

struct ProbeConfig {
    std::vector<double> eps_grid{1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001};
    double radius = 5.0;
    std::size_t centers = 100;
    int directions = 8;
};

struct NetConfig {
    double a = 1.0;
    double radius = 3.0;
    std::size_t sample_size = 20000;
};

// Sample counts of the verification suite.
struct VerifyConfig {
    std::size_t right_triangles = 3000;
    std::size_t triangles = 5000;
    std::size_t obtuse = 2000;
    std::size_t qs_triples = 20000;
    std::size_t graphs = 200;
};

struct RunConfig {
    int dim = 2;
    double lambda = 1.0;
    std::optional<MapSpec> boundary_map;
    std::optional<MapSpec> interior_map;
    Vec3 p{-1.0, 0.0, 0.0};
    int equator_samples = 64;
    int refine_iters = 60;
    double tol = 1e-12;
    SamplingConfig sampling;
    ProbeConfig probe;
    NetConfig net;
    VerifyConfig verify;
    std::string out;             // empty: standard output
    bool report_timing = false;  // wall times make reports differ between runs

    // Throws ConfigError on any out-of-range value or unknown map family.
    void validate() const;
    CurvatureScale k() const { return CurvatureScale(lambda); }
    ExtensionConfig extension() const;
};

// angle_warp(0.2, 1) on the boundary and polar_warp(0.2, 1) inside.
RunConfig default_run_config();

// Missing keys keep their defaults; unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

}  // namespace hyperext
