#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "hyperext/decomposition.hpp"
#include "hyperext/sampling.hpp"

using namespace hyperext;

namespace {
constexpr double kPi = std::numbers::pi;
const CurvatureScale kOne{1.0};

Graph path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

// Smallest number of colors admitting a proper coloring, by backtracking.
bool colorable(const Graph& g, int colors, std::vector<int>& c, std::size_t v) {
    if (v == g.vertex_count()) return true;
    for (int col = 1; col <= colors; ++col) {
        bool ok = true;
        for (std::size_t u : g.neighbors(v))
            if (u < v && c[u] == col) ok = false;
        if (!ok) continue;
        c[v] = col;
        if (colorable(g, colors, c, v + 1)) return true;
    }
    return false;
}

int chromatic_number(const Graph& g) {
    std::vector<int> c(g.vertex_count(), 0);
    int k = 0;
    while (!colorable(g, k, c, 0)) ++k;
    return k;
}

Graph random_bounded_graph(Rng& rng, std::size_t n, std::size_t cap) {
    Graph g(n);
    const std::size_t attempts = n * cap;
    std::vector<std::size_t> deg(n, 0);
    for (std::size_t t = 0; t < attempts; ++t) {
        const auto u = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n)));
        const auto v = static_cast<std::size_t>(uniform(rng, 0.0, static_cast<double>(n)));
        if (u == v || u >= n || v >= n || deg[u] >= cap || deg[v] >= cap || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
        ++deg[u];
        ++deg[v];
    }
    return g;
}

// Boundary circle of the disk of radius r about c, with the first sample
// pointing along `toward`, plus the center.
std::vector<BallPoint> disk_outline(const BallPoint& c, double r, const Vec3& toward, int samples) {
    std::vector<BallPoint> pts{c};
    const Vec3 u = toward, v{-toward.y, toward.x, 0.0};
    for (int j = 0; j < samples; ++j) {
        const double t = 2 * kPi * j / samples;
        pts.push_back(exp_map(tangent_with_length(kOne, c, std::cos(t) * u + std::sin(t) * v, r)));
    }
    return pts;
}
}  // namespace

TEST_CASE("Graph") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
    CHECK_THROWS_AS(g.add_edge(2, 2), DomainError);
    CHECK_THROWS_AS(g.add_edge(0, 3), DomainError);

    std::istringstream in("# comment\n0 1\n\n1 2\n2 0\n");
    const Graph t = Graph::read_edge_list(in);
    CHECK(t.vertex_count() == 3);
    CHECK(t.edge_count() == 3);
    std::ostringstream out;
    t.write_edge_list(out);
    CHECK(out.str() == "0 1\n0 2\n1 2\n");

    std::istringstream bad("0 x\n");
    CHECK_THROWS_AS(Graph::read_edge_list(bad), ConfigError);
    std::istringstream loop("1 1\n");
    CHECK_THROWS_AS(Graph::read_edge_list(loop), DomainError);
}

TEST_CASE("greedy_color examples") {
    const auto p5 = greedy_color(path(5));
    CHECK(p5 == Coloring{1, 2, 1, 2, 1});
    CHECK(coloring_json(p5) == "[1,2,1,2,1]");
    const auto k5 = greedy_color(complete(5));
    CHECK(is_proper(complete(5), k5));
    CHECK(color_count(k5) == 5);
    CHECK(color_count(greedy_color(Graph(4))) == 1);
    CHECK(greedy_color(Graph()).empty());
    CHECK_FALSE(is_proper(path(2), Coloring{1, 1}));
}

TEST_CASE("greedy_color is proper with at most maxdeg + 1 colors on every graph with up to 6 vertices") {
    std::size_t graphs = 0;
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
            Graph g(n);
            for (std::size_t e = 0; e < pairs.size(); ++e)
                if (mask & (1u << e)) g.add_edge(pairs[e].first, pairs[e].second);
            const auto c = greedy_color(g);
            const int used = color_count(c);
            REQUIRE(is_proper(g, c));
            REQUIRE(used <= static_cast<int>(g.max_degree()) + 1);
            REQUIRE(used >= chromatic_number(g));
            ++graphs;
        }
    }
    CHECK(graphs == 1 + 2 + 8 + 64 + 1024 + 32768);
}

TEST_CASE("greedy_color on random bounded-valence graphs") {
    Rng rng = make_rng(91, 0);
    for (int i = 0; i < 1000; ++i) {
        const auto n = static_cast<std::size_t>(uniform(rng, 2.0, 300.0));
        const auto cap = static_cast<std::size_t>(uniform(rng, 1.0, 17.0));
        const Graph g = random_bounded_graph(rng, n, cap);
        REQUIRE(g.max_degree() <= 16);
        const auto c = greedy_color(g);
        CHECK(is_proper(g, c));
        CHECK(color_count(c) <= static_cast<int>(g.max_degree()) + 1);
    }
    SUBCASE("valence 7") {
        Rng r7 = make_rng(92, 0);
        const Graph g = random_bounded_graph(r7, 200, 7);
        CHECK(g.max_degree() == 7);
        CHECK(color_count(greedy_color(g)) <= 8);
    }
}

TEST_CASE("incidence_graph") {
    SUBCASE("trivial cases") {
        const std::vector<std::vector<BallPoint>> far{{BallPoint(0.9, 0)}, {BallPoint(-0.9, 0)}};
        CHECK(incidence_graph(kOne, far, 0.1).edge_count() == 0);
        const std::vector<std::vector<BallPoint>> same{{BallPoint(0.1, 0.2)}, {BallPoint(0.1, 0.2)}};
        CHECK(incidence_graph(kOne, same, 0.1).edge_count() == 1);
        const std::vector<std::vector<BallPoint>> empty{{BallPoint()}, {}};
        CHECK_THROWS_AS(incidence_graph(kOne, empty, 0.1), DomainError);
    }
    SUBCASE("seven tangent disks") {
        // Six disks of radius r tangent to a central one. Hyperbolic equilateral
        // triangles of side 2r have angles below pi/3, so the outer disks do not
        // touch each other.
        const double r = 0.5;
        std::vector<std::vector<BallPoint>> sets{disk_outline(BallPoint(), r, kE1, 360)};
        for (int j = 0; j < 6; ++j) {
            const Vec3 dir{std::cos(j * kPi / 3), std::sin(j * kPi / 3), 0.0};
            const BallPoint c = exp_map(tangent_with_length(kOne, BallPoint(), dir, 2 * r));
            sets.push_back(disk_outline(c, r, -1.0 * dir, 360));
        }
        const Graph g = incidence_graph(kOne, sets, 1e-6, 2);
        CHECK(g.neighbors(0).size() == 6);
        CHECK(g.edge_count() == 6);
        // Valence stays bounded for a covering by balls of bounded radius on a net.
        const Net net = greedy_net(kOne, 2, 3.0, 0.5, 93, 4000);
        std::vector<std::vector<BallPoint>> balls;
        for (const auto& c : net.points) balls.push_back(disk_outline(c, 0.5, kE1, 24));
        const Graph cover = incidence_graph(kOne, balls, 0.0, 2);
        for (std::size_t v = 0; v < cover.vertex_count(); ++v) CHECK(cover.has_edge(v, v) == false);
        CHECK(cover.max_degree() <= 30);
    }
}

TEST_CASE("greedy_net") {
    SUBCASE("separation larger than the region gives one point") {
        CHECK(greedy_net(kOne, 2, 1.0, 2.5, 94, 2000).points.size() == 1);
    }
    SUBCASE("net inequalities hold against the generating sample") {
        for (int dim : {2, 3}) {
            const Net net = greedy_net(kOne, dim, 3.0, 0.5, 95, dim == 2 ? 20000 : 8000);
            double sep = 1e300;
            for (std::size_t i = 0; i < net.points.size(); ++i)
                for (std::size_t j = i + 1; j < net.points.size(); ++j)
                    sep = std::min(sep, hyp_dist(kOne, net.points[i], net.points[j]));
            CHECK(sep >= 0.5);
            CHECK(net.b < 0.5);
            std::vector<BallPoint> sample(net.sample_size);
            for (std::size_t i = 0; i < sample.size(); ++i) {
                Rng rng = make_rng(95, i);
                sample[i] = random_volume_point(rng, dim, kOne, 3.0);
            }
            CHECK(covering_radius(net, sample) == net.b);
            if (dim == 2) {
                // Fresh points are within b plus the sample's own covering radius.
                std::vector<BallPoint> fresh;
                Rng rng = make_rng(96, 0);
                for (int i = 0; i < 1000; ++i) fresh.push_back(random_volume_point(rng, 2, kOne, 3.0));
                double resolution = 0.0;
                for (const auto& x : fresh) {
                    double best = 1e300;
                    for (const auto& y : sample) best = std::min(best, hyp_dist(kOne, x, y));
                    resolution = std::max(resolution, best);
                }
                CHECK(covering_radius(net, fresh) <= 0.5 + resolution);
            }
        }
    }
    SUBCASE("determinism") {
        const Net a = greedy_net(kOne, 2, 2.0, 0.7, 97, 3000, 1);
        const Net b = greedy_net(kOne, 2, 2.0, 0.7, 97, 3000, 2);
        REQUIRE(a.points.size() == b.points.size());
        for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(norm(a.points[i].coords() - b.points[i].coords()) == 0.0);
        CHECK(a.b == b.b);
    }
    SUBCASE("volume sampling fills the ball evenly") {
        // Half the area of the radius-2 disk lies beyond radius acosh((cosh 2 + 1) / 2).
        Rng rng = make_rng(98, 0);
        const double split = std::acosh((std::cosh(2.0) + 1.0) / 2.0);
        int outside = 0;
        for (int i = 0; i < 20000; ++i)
            outside += hyp_dist(kOne, BallPoint(), random_volume_point(rng, 2, kOne, 2.0)) > split;
        CHECK(std::abs(outside / 20000.0 - 0.5) < 0.02);
    }
    SUBCASE("parameters are validated") {
        CHECK_THROWS_AS(greedy_net(kOne, 2, 3.0, 0.0, 1), ConfigError);
        CHECK_THROWS_AS(greedy_net(kOne, 2, 11.0, 1.0, 1), ConfigError);
    }
}

TEST_CASE("net_bilipschitz_estimate") {
    const auto g = compose(MobiusIsometry::translation(kOne, kE1, 1.0), MobiusIsometry::rotation(rotation_z(0.5)));
    SUBCASE("isometry") {
        const Net net = greedy_net(kOne, 2, 3.0, 1.0, 99, 4000);
        const auto e = net_bilipschitz_estimate(InteriorMap::mobius(g), net);
        CHECK(std::abs(e.lower - 1.0) < 1e-9);
        CHECK(std::abs(e.upper - 1.0) < 1e-9);
    }
    SUBCASE("jittered translation on a 2-separated net") {
        const auto f = InteriorMap::jittered_isometry(MobiusIsometry::translation(kOne, kE1, 1.0), kOne, 0.3, 2);
        const Net net = greedy_net(kOne, 2, 5.0, 2.0, 100, 6000);
        const auto e = net_bilipschitz_estimate(f, net);
        CHECK(guaranteed_lower_ratio(f, 2.0) == doctest::Approx(0.7));
        CHECK(e.lower >= 0.7);
        CHECK(e.upper <= 1.3);
        CHECK(e.lower >= guaranteed_lower_ratio(f, net.a));
    }
    SUBCASE("polar warp") {
        const Net net = greedy_net(kOne, 2, 4.0, 1.0, 101, 6000);
        const auto e = net_bilipschitz_estimate(InteriorMap::polar_warp(0.2, 1), net);
        CHECK(e.lower > 0.0);
        CHECK(std::isfinite(e.upper));
        CHECK(e.lower <= e.upper);
    }
    SUBCASE("singleton net") {
        const Net net = greedy_net(kOne, 2, 1.0, 5.0, 102, 100);
        CHECK_THROWS_AS(net_bilipschitz_estimate(InteriorMap::mobius(g), net), DomainError);
    }
}
