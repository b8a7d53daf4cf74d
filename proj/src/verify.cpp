#include "hyperext/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <type_traits>

#include "hyperext/coarse.hpp"
#include "hyperext/decomposition.hpp"
#include "hyperext/format.hpp"
#include "hyperext/probes.hpp"
#include "hyperext/sampling.hpp"
#include "hyperext/visual.hpp"

namespace hyperext {

namespace {

using nlohmann::json;

const double kLog3 = std::log(3.0);
const double kLn1pSqrt2 = std::log(1.0 + std::sqrt(2.0));
constexpr double kStabilityFloor = 5e-6;

double round12(double v) { return std::isfinite(v) ? std::stod(format_number(v)) : v; }

double relative_change(double a, double b) { return std::abs(b - a) / std::max({a, b, kStabilityFloor}); }

template <class Fn>
auto timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if constexpr (std::is_same_v<decltype(result), CheckResult>) {
        result.wall_seconds = s;
    } else {
        for (auto& r : result) r.wall_seconds = s;
    }
    return result;
}

double grid_law(const ExtensionConfig& cfg, const BoundaryMap& h, double radius, int per_axis,
                const std::function<BallPoint(const BallPoint&)>& expected, std::size_t& points) {
    const auto grid = ball_grid(cfg.k, cfg.dim, radius, per_axis);
    points = grid.size();
    double worst = 0.0;
    for (const auto& x : grid) worst = std::max(worst, hyp_dist(cfg.k, extend(h, cfg, x), expected(x)));
    return worst;
}

Graph random_bounded_graph(Rng& rng, std::size_t n, std::size_t cap) {
    Graph g(n);
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t t = 0; t < n * cap; ++t) {
        const auto u = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n)));
        const auto v = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n)));
        if (u == v || u >= n || v >= n || deg[u] >= cap || deg[v] >= cap || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        ++deg[u];
        ++deg[v];
    }
    return g;
}

bool coloring_ok(const Graph& g) {
    const auto c = greedy_color(g);
    return is_proper(g, c) && color_count(c) <= static_cast<int>(g.max_degree()) + 1;
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed + 0x51ed27ULL * tag); }

}  // namespace

const char* relation_symbol(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::LessEqual: return "<=";
        case Relation::Greater: return ">";
        case Relation::GreaterEqual: return ">=";
    }
    return "?";
}

CheckResult make_check(std::string id, std::string statistic, std::size_t samples, double measured, Relation relation,
                       double threshold) {
    bool pass = false;
    switch (relation) {
        case Relation::Less: pass = measured < threshold; break;
        case Relation::LessEqual: pass = measured <= threshold; break;
        case Relation::Greater: pass = measured > threshold; break;
        case Relation::GreaterEqual: pass = measured >= threshold; break;
    }
    return {std::move(id), std::move(statistic), samples, measured, relation, threshold, pass, 0.0};
}

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> VerificationReport::failing_ids() const {
    std::vector<std::string> ids;
    for (const auto& c : checks)
        if (!c.pass) ids.push_back(c.id);
    return ids;
}

json VerificationReport::to_json(bool with_timing) const {
    json rows = json::array();
    for (const auto& c : checks) {
        json r = {{"id", c.id},
                  {"statistic", c.statistic},
                  {"samples", c.samples},
                  {"measured", round12(c.measured)},
                  {"relation", relation_symbol(c.relation)},
                  {"threshold", round12(c.threshold)},
                  {"pass", c.pass}};
        if (with_timing) r["wall_seconds"] = round12(c.wall_seconds);
        rows.push_back(std::move(r));
    }
    return {{"checks", std::move(rows)}, {"low_power", low_power}, {"passed", all_passed()}, {"failing", failing_ids()}};
}

CheckResult check_right_triangle_identity(std::span<const double> lambdas, std::size_t count, std::uint64_t seed) {
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const CurvatureScale k(lambdas[i % lambdas.size()]);
        const int dim = (i / lambdas.size()) % 2 ? 3 : 2;
        Rng rng = make_rng(seed, i);
        const auto t = random_right_triangle(rng, k, dim);
        worst = std::max(worst, std::abs(right_triangle_residual(k, t.a, t.b, t.c)));
    }
    return make_check("right_triangle_identity", "max |cosh(lambda a) sin B - cos A|", count, worst, Relation::Less,
                      1e-9);
}

CheckResult check_thinness(std::span<const double> lambdas, int dim, std::size_t count, std::uint64_t seed,
                           unsigned threads) {
    const auto s = thinness_sweep(lambdas, dim, count, seed, threads);
    return make_check("triangle_thinness_log3", "max thinness", s.samples, s.max_thinness, Relation::LessEqual,
                      kLog3 + 1e-3);
}

std::vector<CheckResult> check_obtuse_bound(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed,
                                            unsigned threads) {
    const auto s = obtuse_sweep(k, dim, count, seed, true, threads);
    return {make_check("obtuse_vertex_to_opposite_side", "max d(x, yz)", s.samples, s.max_distance,
                       Relation::LessEqual, kLn1pSqrt2 + 1e-3),
            make_check("obtuse_opposite_side_hausdorff", "max HD(yz, xy u xz)", s.samples, s.max_hausdorff,
                       Relation::LessEqual, kLn1pSqrt2 + 1e-3)};
}

CheckResult check_symmetric_obtuse() {
    const CurvatureScale k(1.0);
    const double d = distance_to_opposite_side(k, {BallPoint(), IdealPoint(1, 0), IdealPoint(0, 1)});
    return make_check("symmetric_right_angle_attains_constant", "|d(0, e1 e2) - ln(1 + sqrt 2)|", 1,
                      std::abs(d - kLn1pSqrt2), Relation::LessEqual, 1e-6);
}

CheckResult check_identity_law(const ExtensionConfig& cfg, double radius, int per_axis) {
    std::size_t n = 0;
    const double worst =
        grid_law(cfg, BoundaryMap::identity(), radius, per_axis, [](const BallPoint& x) { return x; }, n);
    return make_check("extension_identity_law", "max d(F x, x)", n, worst, Relation::Less, 1e-9);
}

CheckResult check_isometry_law(const ExtensionConfig& cfg, const MobiusIsometry& g, double radius, int per_axis) {
    std::size_t n = 0;
    const double worst =
        grid_law(cfg, BoundaryMap::mobius(g), radius, per_axis, [&](const BallPoint& x) { return g(x); }, n);
    return make_check("extension_isometry_law", "max d(F x, g x)", n, worst, Relation::Less, 1e-5);
}

CheckResult check_equator_constant(const ExtensionConfig& cfg, double radius, std::size_t samples,
                                   std::uint64_t seed) {
    const auto b = boundary_bounds_check(BoundaryMap::identity(), cfg, radius, samples, seed);
    const double expected = std::pow(std::sqrt(2.0) - 1.0, 1.0 / cfg.k.lambda());
    return make_check("equator_visual_distance_constant", "max |d_x(beta, q_x) - (sqrt 2 - 1)^(1/lambda)|", samples,
                      std::max(std::abs(b.b1 - expected), std::abs(b.b2 - expected)), Relation::LessEqual, 1e-9);
}

CheckResult check_span_stability(const BoundaryMap& h, const ExtensionConfig& cfg, double r_small, double r_large,
                                 std::size_t samples, std::uint64_t seed, unsigned threads) {
    const double a = max_projection_span(h, cfg, r_small, samples, seed, threads);
    const double b = max_projection_span(h, cfg, r_large, samples, seed, threads);
    const bool finite = std::isfinite(a) && std::isfinite(b);
    return make_check("projection_span_stability/" + h.family(),
                      "relative change of max span from radius " + format_number(r_small) + " to " +
                          format_number(r_large) + " (max span " + format_number(b) + ")",
                      samples, finite ? relative_change(a, b) : INFINITY, Relation::Less, 0.2);
}

std::vector<CheckResult> check_continuity(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                          std::span<const double> eps_grid, std::size_t centers, int directions,
                                          std::uint64_t seed, unsigned threads) {
    const auto rows = continuity_modulus(h, cfg, radius, eps_grid, centers, directions, seed, threads);
    const auto smallest = std::min_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.eps < b.eps; });
    double min_gap = INFINITY;
    for (const auto& r : rows) min_gap = std::min(min_gap, r.delta);
    const std::size_t n = centers * static_cast<std::size_t>(directions);
    return {make_check("forward_modulus/" + h.family(), "omega at eps = " + format_number(smallest->eps), n,
                       smallest->omega, Relation::Less, 1e-2),
            make_check("sphere_image_gap/" + h.family(), "min over eps of delta", n, min_gap, Relation::Greater, 0.0)};
}

CheckResult check_interior_stability(const InteriorMap& f, const ExtensionConfig& cfg, double r_small, double r_large,
                                     std::size_t samples, std::uint64_t seed, unsigned threads) {
    const double a = compare_to_interior(f, cfg, r_small, samples, seed, threads);
    const double b = compare_to_interior(f, cfg, r_large, samples, seed, threads);
    return make_check("interior_distance_stability/" + f.family(),
                      "relative change of sup d(F, f) from radius " + format_number(r_small) + " to " +
                          format_number(r_large) + " (sup " + format_number(b) + ")",
                      samples, relative_change(a, b), Relation::Less, 0.1);
}

CheckResult check_jitter_distance(const ExtensionConfig& cfg, double amplitude, double radius, std::size_t samples,
                                  std::uint64_t seed, unsigned threads) {
    const auto f = InteriorMap::jittered_isometry(builtin_isometry(cfg.k, cfg.dim), cfg.k, amplitude, cfg.dim);
    return make_check("jittered_isometry_distance", "sup d(F, f)", samples,
                      compare_to_interior(f, cfg, radius, samples, seed, threads), Relation::LessEqual,
                      amplitude + 1e-5);
}

CheckResult check_qs_exponent(const BoundaryMap& h, const CurvatureScale& k, int dim, std::size_t triples,
                              std::uint64_t seed) {
    const auto [x, xp] = paired_basepoints(k, h, IdealPoint(-1, 0), IdealPoint(1, 0), IdealPoint(0, 1));
    const auto cloud = qs_cloud(h, {x, k}, {xp, k}, dim, triples, seed);
    return make_check("quasisymmetry_exponent/" + h.family(), "fitted envelope exponent alpha", triples, cloud.alpha,
                      Relation::GreaterEqual, 1.0 / h.declared_L() - 0.1);
}

CheckResult check_coloring_random(std::size_t graphs, std::uint64_t seed) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < graphs; ++i) {
        Rng rng = make_rng(seed, i);
        const auto n = static_cast<std::size_t>(uniform(rng, 2.0, 300.0));
        const auto cap = static_cast<std::size_t>(uniform(rng, 1.0, 17.0));
        if (!coloring_ok(random_bounded_graph(rng, n, std::min<std::size_t>(cap, 16)))) ++bad;
    }
    return make_check("greedy_coloring_random", "graphs with an improper or oversized coloring", graphs,
                      static_cast<double>(bad), Relation::LessEqual, 0.0);
}

CheckResult check_coloring_exhaustive(int max_vertices) {
    std::size_t bad = 0, total = 0;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(max_vertices); ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            Graph g(n);
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if (mask >> e & 1u) g.add_edge(pairs[e].first, pairs[e].second);
            if (!coloring_ok(g)) ++bad;
            ++total;
        }
    }
    return make_check("greedy_coloring_exhaustive",
                      "graphs on at most " + std::to_string(max_vertices) + " vertices colored badly", total,
                      static_cast<double>(bad), Relation::LessEqual, 0.0);
}

MobiusIsometry builtin_isometry(const CurvatureScale& k, int dim) {
    if (dim == 2)
        return compose(MobiusIsometry::translation(k, normalized(Vec3{0.3, -1.0, 0.0}), 1.3),
                       MobiusIsometry::rotation(rotation_z(0.7)));
    return compose(MobiusIsometry::translation(k, normalized(Vec3{0.3, -1.0, 0.4}), 1.3),
                   MobiusIsometry::rotation(rotation_about(normalized(Vec3{1.0, 2.0, 3.0}), 0.8)));
}

std::vector<BoundaryMap> builtin_boundary_maps(const CurvatureScale& k, int dim) {
    const auto g = BoundaryMap::mobius(builtin_isometry(k, dim));
    return {BoundaryMap::identity(), g, BoundaryMap::angle_warp(0.2, 1), BoundaryMap::latitude_warp(0.2, 1, dim),
            BoundaryMap::composite({BoundaryMap::angle_warp(0.2, 1), g})};
}

VerificationReport run_verification(const RunConfig& cfg) {
    cfg.validate();
    const CurvatureScale k = cfg.k();
    const ExtensionConfig ext = cfg.extension();
    const std::uint64_t seed = cfg.sampling.seed;
    const unsigned threads = cfg.sampling.threads;
    const std::size_t n = cfg.sampling.samples;
    const double R = cfg.sampling.radius;
    const std::vector<double> lambdas{cfg.lambda};
    const BoundaryMap h = cfg.boundary_map ? build_boundary_map(*cfg.boundary_map, k, cfg.dim)
                                           : BoundaryMap::angle_warp(0.2, 1);

    VerificationReport report;
    const auto add = [&](auto result) {
        if constexpr (std::is_same_v<decltype(result), CheckResult>) {
            report.checks.push_back(std::move(result));
        } else {
            for (auto& r : result) report.checks.push_back(std::move(r));
        }
    };
    add(timed([&] { return check_right_triangle_identity(lambdas, cfg.verify.right_triangles, derive(seed, 1)); }));
    add(timed([&] { return check_thinness(lambdas, cfg.dim, cfg.verify.triangles, derive(seed, 2), threads); }));
    add(timed([&] { return check_obtuse_bound(k, cfg.dim, cfg.verify.obtuse, derive(seed, 3), threads); }));
    add(timed([&] { return check_symmetric_obtuse(); }));
    add(timed([&] { return check_identity_law(ext, R, cfg.sampling.grid_per_axis); }));
    add(timed([&] { return check_isometry_law(ext, builtin_isometry(k, cfg.dim), R, cfg.sampling.grid_per_axis); }));
    add(timed([&] { return check_equator_constant(ext, R, n, derive(seed, 4)); }));
    add(timed([&] { return check_span_stability(h, ext, R, 1.5 * R, n, derive(seed, 5), threads); }));
    add(timed([&] {
        return check_continuity(h, ext, cfg.probe.radius, cfg.probe.eps_grid, cfg.probe.centers, cfg.probe.directions,
                                derive(seed, 6), threads);
    }));
    if (cfg.interior_map) {
        const InteriorMap f = build_interior_map(*cfg.interior_map, k, cfg.dim);
        add(timed([&] { return check_interior_stability(f, ext, 0.75 * R, 1.5 * R, n, derive(seed, 7), threads); }));
    }
    add(timed([&] { return check_jitter_distance(ext, 0.3, R, n, derive(seed, 8), threads); }));
    add(timed([&] { return check_qs_exponent(h, k, cfg.dim, cfg.verify.qs_triples, derive(seed, 9)); }));
    add(timed([&] { return check_coloring_random(cfg.verify.graphs, derive(seed, 10)); }));
    add(timed([&] { return check_coloring_exhaustive(6); }));

    report.low_power = cfg.verify.right_triangles < 1000 || cfg.verify.triangles < 1000 || cfg.verify.obtuse < 1000 ||
                       n < 1000 || cfg.verify.qs_triples < 5000 || cfg.verify.graphs < 100 || cfg.probe.centers < 50;
    return report;
}

}  // namespace hyperext
