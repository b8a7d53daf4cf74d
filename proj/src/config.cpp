#include "hyperext/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>

namespace hyperext {

namespace {

using nlohmann::json;

// Largest lambda-scaled region radius kept well inside the interior guard.
constexpr double kMaxScaledRadius = 12.0;

void expect_object(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : keys) known = known || key == k;
        if (!known) throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(where + ": expected a finite number");
    return v;
}

std::uint64_t count(const json& j, const std::string& where) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        throw ConfigError(where + ": expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(where + ": integer out of range");
    return static_cast<int>(v);
}

Vec3 vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() < 2 || j.size() > 3) throw ConfigError(where + ": expected 2 or 3 numbers");
    return {number(j[0], where), number(j[1], where), j.size() == 3 ? number(j[2], where) : 0.0};
}

template <class T, class Read>
void read_if(const json& j, const char* key, T& target, const std::string& where, Read read) {
    if (j.contains(key)) target = read(j.at(key), where + "." + key);
}

MapSpec parse_map(const json& j, const std::string& where) {
    expect_object(j, where,
                  {"family", "a", "k", "translate_axis", "translate_distance", "rotate_axis", "rotate_angle",
                   "amplitude", "maps"});
    MapSpec s;
    if (!j.contains("family") || !j.at("family").is_string()) throw ConfigError(where + ".family: expected a string");
    s.family = j.at("family").get<std::string>();
    read_if(j, "a", s.a, where, number);
    read_if(j, "k", s.k, where, integer);
    read_if(j, "translate_axis", s.translate_axis, where, vec3);
    read_if(j, "translate_distance", s.translate_distance, where, number);
    read_if(j, "rotate_axis", s.rotate_axis, where, vec3);
    read_if(j, "rotate_angle", s.rotate_angle, where, number);
    read_if(j, "amplitude", s.amplitude, where, number);
    if (j.contains("maps")) {
        if (!j.at("maps").is_array()) throw ConfigError(where + ".maps: expected an array");
        for (std::size_t i = 0; i < j.at("maps").size(); ++i)
            s.parts.push_back(parse_map(j.at("maps")[i], where + ".maps[" + std::to_string(i) + "]"));
    }
    return s;
}

Vec3 unit_axis(const Vec3& v, const char* what) {
    const double n = norm(v);
    if (!(n > 0.0)) throw ConfigError(std::string(what) + ": axis must be nonzero");
    return v / n;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

MobiusIsometry build_isometry(const MapSpec& spec, const CurvatureScale& k) {
    const auto rot = MobiusIsometry::rotation(rotation_about(unit_axis(spec.rotate_axis, "rotate_axis"), spec.rotate_angle));
    if (spec.translate_distance == 0.0) return rot;
    return compose(MobiusIsometry::translation(k, unit_axis(spec.translate_axis, "translate_axis"), spec.translate_distance),
                   rot);
}

BoundaryMap build_boundary_map(const MapSpec& spec, const CurvatureScale& k, int dim) {
    if (spec.family == "identity") return BoundaryMap::identity();
    if (spec.family == "mobius") return BoundaryMap::mobius(build_isometry(spec, k));
    if (spec.family == "angle_warp") return BoundaryMap::angle_warp(spec.a, spec.k);
    if (spec.family == "latitude_warp") return BoundaryMap::latitude_warp(spec.a, spec.k, dim);
    if (spec.family == "composite") {
        require(!spec.parts.empty(), "composite map needs at least one part");
        std::vector<BoundaryMap> parts;
        for (const auto& p : spec.parts) parts.push_back(build_boundary_map(p, k, dim));
        return BoundaryMap::composite(parts);
    }
    throw ConfigError("unknown boundary map family \"" + spec.family + "\"");
}

InteriorMap build_interior_map(const MapSpec& spec, const CurvatureScale& k, int dim) {
    if (spec.family == "mobius") return InteriorMap::mobius(build_isometry(spec, k));
    if (spec.family == "jittered_isometry")
        return InteriorMap::jittered_isometry(build_isometry(spec, k), k, spec.amplitude, dim);
    if (spec.family == "polar_warp") return InteriorMap::polar_warp(spec.a, spec.k);
    throw ConfigError("unknown interior map family \"" + spec.family + "\"");
}

void RunConfig::validate() const {
    require(dim == 2 || dim == 3, "model.dim must be 2 or 3");
    require(std::isfinite(lambda) && lambda >= 1.0, "model.lambda must be >= 1");
    require(std::abs(norm(p) - 1.0) < 1e-9, "extension.p must be a unit vector");
    require(dim == 3 || p.z == 0.0, "extension.p must lie in the plane when dim is 2");
    extension().validate();

    require(sampling.samples > 0, "sampling.samples must be positive");
    require(sampling.radius > 0.0 && lambda * sampling.radius <= kMaxScaledRadius,
            "sampling.radius must be positive and at most 12 / lambda");
    require(sampling.grid_per_axis >= 2, "sampling.grid_per_axis must be at least 2");

    require(!probe.eps_grid.empty(), "probe.eps_grid must not be empty");
    for (double e : probe.eps_grid) require(e > 0.0 && std::isfinite(e), "probe.eps_grid entries must be positive");
    require(probe.radius > 0.0 && lambda * probe.radius <= kMaxScaledRadius,
            "probe.radius must be positive and at most 12 / lambda");
    require(probe.centers > 0 && probe.directions > 0, "probe.centers and probe.directions must be positive");

    require(net.a > 0.0, "net.a must be positive");
    require(net.radius > 0.0 && net.radius <= 10.0, "net.radius must be in (0, 10]");
    require(net.sample_size > 0, "net.sample_size must be positive");

    require(verify.right_triangles > 0 && verify.triangles > 0 && verify.obtuse > 0 && verify.qs_triples > 0 &&
                verify.graphs > 0,
            "verify counts must be positive");

    try {
        if (boundary_map) build_boundary_map(*boundary_map, k(), dim);
        if (interior_map) build_interior_map(*interior_map, k(), dim);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

ExtensionConfig RunConfig::extension() const {
    ExtensionConfig c;
    c.k = CurvatureScale(lambda);
    c.dim = dim;
    c.p = IdealPoint(p);
    c.equator_samples = equator_samples;
    c.refine_iters = refine_iters;
    c.tol = tol;
    return c;
}

RunConfig default_run_config() {
    RunConfig c;
    MapSpec h;
    h.family = "angle_warp";
    MapSpec f;
    f.family = "polar_warp";
    c.boundary_map = h;
    c.interior_map = f;
    return c;
}

RunConfig parse_run_config(const json& j) {
    expect_object(j, "config",
                  {"model", "boundary_map", "interior_map", "extension", "sampling", "probe", "net", "verify", "output",
                   "report_timing"});
    RunConfig c;
    if (j.contains("model")) {
        const json& m = j.at("model");
        expect_object(m, "model", {"dim", "lambda"});
        read_if(m, "dim", c.dim, "model", integer);
        read_if(m, "lambda", c.lambda, "model", number);
    }
    if (j.contains("boundary_map") && !j.at("boundary_map").is_null())
        c.boundary_map = parse_map(j.at("boundary_map"), "boundary_map");
    if (j.contains("interior_map") && !j.at("interior_map").is_null())
        c.interior_map = parse_map(j.at("interior_map"), "interior_map");
    if (j.contains("extension")) {
        const json& e = j.at("extension");
        expect_object(e, "extension", {"p", "equator_samples", "refine_iters", "tol"});
        read_if(e, "p", c.p, "extension", vec3);
        read_if(e, "equator_samples", c.equator_samples, "extension", integer);
        read_if(e, "refine_iters", c.refine_iters, "extension", integer);
        read_if(e, "tol", c.tol, "extension", number);
    }
    if (j.contains("sampling")) {
        const json& s = j.at("sampling");
        expect_object(s, "sampling", {"seed", "samples", "radius", "grid_per_axis", "threads"});
        read_if(s, "seed", c.sampling.seed, "sampling", count);
        read_if(s, "samples", c.sampling.samples, "sampling", count);
        read_if(s, "radius", c.sampling.radius, "sampling", number);
        read_if(s, "grid_per_axis", c.sampling.grid_per_axis, "sampling", integer);
        if (s.contains("threads")) c.sampling.threads = static_cast<unsigned>(count(s.at("threads"), "sampling.threads"));
    }
    if (j.contains("probe")) {
        const json& p = j.at("probe");
        expect_object(p, "probe", {"eps_grid", "radius", "centers", "directions"});
        if (p.contains("eps_grid")) {
            if (!p.at("eps_grid").is_array()) throw ConfigError("probe.eps_grid: expected an array");
            c.probe.eps_grid.clear();
            for (const auto& e : p.at("eps_grid")) c.probe.eps_grid.push_back(number(e, "probe.eps_grid"));
        }
        read_if(p, "radius", c.probe.radius, "probe", number);
        read_if(p, "centers", c.probe.centers, "probe", count);
        read_if(p, "directions", c.probe.directions, "probe", integer);
    }
    if (j.contains("net")) {
        const json& n = j.at("net");
        expect_object(n, "net", {"a", "radius", "sample_size"});
        read_if(n, "a", c.net.a, "net", number);
        read_if(n, "radius", c.net.radius, "net", number);
        read_if(n, "sample_size", c.net.sample_size, "net", count);
    }
    if (j.contains("verify")) {
        const json& v = j.at("verify");
        expect_object(v, "verify", {"right_triangles", "triangles", "obtuse", "qs_triples", "graphs"});
        read_if(v, "right_triangles", c.verify.right_triangles, "verify", count);
        read_if(v, "triangles", c.verify.triangles, "verify", count);
        read_if(v, "obtuse", c.verify.obtuse, "verify", count);
        read_if(v, "qs_triples", c.verify.qs_triples, "verify", count);
        read_if(v, "graphs", c.verify.graphs, "verify", count);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        expect_object(o, "output", {"path"});
        if (o.contains("path")) {
            if (!o.at("path").is_string()) throw ConfigError("output.path: expected a string");
            c.out = o.at("path").get<std::string>();
        }
    }
    if (j.contains("report_timing")) {
        if (!j.at("report_timing").is_boolean()) throw ConfigError("report_timing: expected true or false");
        c.report_timing = j.at("report_timing").get<bool>();
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_run_config(j);
}

}  // namespace hyperext
