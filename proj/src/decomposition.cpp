#include "hyperext/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace hyperext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxNetRadius = 10.0;

// Unit-curvature radius s with the given fraction of the volume of the ball of
// radius S inside it; the volume element is proportional to sinh(s)^(dim-1).
double volume_radius(int dim, double S, double u) {
    if (dim == 2) return std::acosh(1.0 + u * (std::cosh(S) - 1.0));
    const auto vol = [](double s) { return std::sinh(2.0 * s) - 2.0 * s; };
    const double target = u * vol(S);
    double lo = 0.0, hi = S;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * S; ++i) {
        const double mid = 0.5 * (lo + hi);
        (vol(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double min_set_distance(const CurvatureScale& k, const std::vector<BallPoint>& a, const std::vector<BallPoint>& b) {
    double best = kInf;
    for (const auto& x : a)
        for (const auto& y : b) best = std::min(best, hyp_dist(k, x, y));
    return best;
}

}  // namespace

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= adj_.size()) throw DomainError("Graph: vertex out of range");
    if (u == v) throw DomainError("Graph: self-loops are not allowed");
    if (has_edge(u, v)) return;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& n : adj_) twice += n.size();
    return twice / 2;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
    const auto& n = adj_.at(u);
    return std::find(n.begin(), n.end(), v) != n.end();
}

std::size_t Graph::max_degree() const {
    std::size_t m = 0;
    for (const auto& n : adj_) m = std::max(m, n.size());
    return m;
}

Graph Graph::read_edge_list(std::istream& in) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t vertices = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream row(line);
        long long u = -1, v = -1;
        std::string rest;
        if (!(row >> u >> v) || (row >> rest) || u < 0 || v < 0)
            throw ConfigError("edge list line " + std::to_string(line_no) + ": expected two nonnegative indices");
        edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        vertices = std::max({vertices, edges.back().first + 1, edges.back().second + 1});
    }
    Graph g(vertices);
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::write_edge_list(std::ostream& out) const {
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        std::vector<std::size_t> later;
        for (std::size_t v : adj_[u])
            if (v > u) later.push_back(v);
        std::sort(later.begin(), later.end());
        for (std::size_t v : later) out << u << ' ' << v << '\n';
    }
}

Coloring greedy_color(const Graph& g) {
    const std::size_t n = g.vertex_count();
    Coloring c(n, 0);
    std::vector<char> used;
    for (std::size_t v = 0; v < n; ++v) {
        used.assign(g.neighbors(v).size() + 2, 0);
        for (std::size_t u : g.neighbors(v)) {
            const auto cu = static_cast<std::size_t>(c[u]);
            if (cu < used.size()) used[cu] = 1;
        }
        int color = 1;
        while (used[static_cast<std::size_t>(color)]) ++color;
        c[v] = color;
    }
    return c;
}

bool is_proper(const Graph& g, const Coloring& c) {
    if (c.size() != g.vertex_count()) return false;
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (c[v] < 1) return false;
        for (std::size_t u : g.neighbors(v))
            if (c[u] == c[v]) return false;
    }
    return true;
}

int color_count(const Coloring& c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()); }

std::string coloring_json(const Coloring& c) { return nlohmann::json(c).dump(); }

Graph incidence_graph(const CurvatureScale& k, const std::vector<std::vector<BallPoint>>& sets, double touch_radius,
                      unsigned threads) {
    if (!(touch_radius >= 0.0)) throw ConfigError("incidence_graph: touch_radius must be nonnegative");
    for (const auto& s : sets)
        if (s.empty()) throw DomainError("incidence_graph: empty set in the covering");
    const std::size_t n = sets.size();
    std::vector<std::vector<char>> touch(n, std::vector<char>(n, 0));
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) touch[i][j] = min_set_distance(k, sets[i], sets[j]) <= touch_radius;
    });
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (touch[i][j]) g.add_edge(i, j);
    return g;
}

BallPoint random_volume_point(Rng& rng, int dim, const CurvatureScale& k, double radius) {
    const double s = volume_radius(dim, k.lambda() * radius, uniform(rng, 0.0, 1.0));
    return BallPoint::clamped(std::tanh(0.5 * s) * random_unit(rng, dim));
}

Net greedy_net(const CurvatureScale& k, int dim, double radius, double a, std::uint64_t seed, std::size_t sample_size,
               unsigned threads) {
    if (dim != 2 && dim != 3) throw ConfigError("greedy_net: dim must be 2 or 3");
    if (!(a > 0.0)) throw ConfigError("greedy_net: separation a must be positive");
    if (!(radius > 0.0 && radius <= kMaxNetRadius)) throw ConfigError("greedy_net: region radius must be in (0, 10]");
    if (sample_size == 0) throw ConfigError("greedy_net: sample_size must be positive");

    std::vector<BallPoint> sample(sample_size);
    for (std::size_t i = 0; i < sample_size; ++i) {
        Rng rng = make_rng(seed, i);
        sample[i] = random_volume_point(rng, dim, k, radius);
    }
    Net net{k, dim, radius, a, 0.0, sample_size, {}};
    for (const auto& x : sample) {
        const bool far = std::all_of(net.points.begin(), net.points.end(),
                                     [&](const BallPoint& y) { return hyp_dist(k, x, y) >= a; });
        if (far) net.points.push_back(x);
    }
    net.b = covering_radius(net, sample, threads);
    return net;
}

double covering_radius(const Net& net, const std::vector<BallPoint>& points, unsigned threads) {
    std::vector<double> nearest(points.size(), kInf);
    parallel_for(points.size(), threads, [&](std::size_t i) {
        for (const auto& y : net.points) nearest[i] = std::min(nearest[i], hyp_dist(net.k, points[i], y));
    });
    return nearest.empty() ? 0.0 : *std::max_element(nearest.begin(), nearest.end());
}

BilipschitzEstimate net_bilipschitz_estimate(const InteriorMap& f, const Net& net, unsigned threads) {
    const std::size_t n = net.points.size();
    if (n < 2) throw DomainError("net_bilipschitz_estimate: the net needs at least two points");
    std::vector<BallPoint> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = f(net.points[i]);
    std::vector<BilipschitzEstimate> rows(n, {kInf, 0.0});
    parallel_for(n, threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = hyp_dist(net.k, image[i], image[j]) / hyp_dist(net.k, net.points[i], net.points[j]);
            rows[i].lower = std::min(rows[i].lower, r);
            rows[i].upper = std::max(rows[i].upper, r);
        }
    });
    BilipschitzEstimate e{kInf, 0.0};
    for (const auto& r : rows) {
        e.lower = std::min(e.lower, r.lower);
        e.upper = std::max(e.upper, r.upper);
    }
    return e;
}

double guaranteed_lower_ratio(const InteriorMap& f, double a) { return 1.0 / f.declared_L() - f.declared_A() / a; }

}  // namespace hyperext
