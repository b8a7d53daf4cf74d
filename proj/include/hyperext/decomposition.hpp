#pragma once

// Incidence graphs of coverings, first-fit coloring of bounded-valence graphs,
// separated nets and bilipschitz estimates of maps restricted to them.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hyperext/maps.hpp"
#include "hyperext/model.hpp"
#include "hyperext/sampling.hpp"

namespace hyperext {

// Undirected simple graph on vertices 0..n-1.
class Graph {
  public:
    explicit Graph(std::size_t vertices = 0) : adj_(vertices) {}

    // Ignores repeated edges; rejects self-loops and out-of-range vertices.
    void add_edge(std::size_t u, std::size_t v);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const;
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
    bool has_edge(std::size_t u, std::size_t v) const;
    std::size_t max_degree() const;

    // One "u v" pair per line, 0-indexed. Blank lines and lines starting with
    // '#' are skipped. The vertex count is the largest index plus one.
    static Graph read_edge_list(std::istream& in);
    void write_edge_list(std::ostream& out) const;

  private:
    std::vector<std::vector<std::size_t>> adj_;
};

// Colors are 1..N, one per vertex.
using Coloring = std::vector<int>;

// First-fit in vertex order: each vertex gets the smallest color unused by its
// earlier neighbors, so at most max_degree + 1 colors appear.
Coloring greedy_color(const Graph& g);
bool is_proper(const Graph& g, const Coloring& c);
int color_count(const Coloring& c);
std::string coloring_json(const Coloring& c);

// Edge between sets whose closest points are within touch_radius.
Graph incidence_graph(const CurvatureScale& k, const std::vector<std::vector<BallPoint>>& sets, double touch_radius,
                      unsigned threads = 1);

struct Net {
    CurvatureScale k;
    int dim = 2;
    double region_radius = 0.0;  // the net lives in the ball of this radius about the origin
    double a = 0.0;              // separation
    double b = 0.0;              // covering radius against the generating sample
    std::size_t sample_size = 0;
    std::vector<BallPoint> points;
};

// Uniform point of the ball of the given radius with respect to hyperbolic volume.
BallPoint random_volume_point(Rng& rng, int dim, const CurvatureScale& k, double radius);

// Greedy maximal a-separated subset of a volume-uniform sample of the ball.
// Requires a > 0 and 0 < radius <= 10.
Net greedy_net(const CurvatureScale& k, int dim, double radius, double a, std::uint64_t seed,
               std::size_t sample_size = 20000, unsigned threads = 1);

// Largest distance from the given points to the net.
double covering_radius(const Net& net, const std::vector<BallPoint>& points, unsigned threads = 1);

struct BilipschitzEstimate {
    double lower = 0.0;  // min over distinct net pairs of d(f x, f y) / d(x, y)
    double upper = 0.0;  // max of the same ratio
};
BilipschitzEstimate net_bilipschitz_estimate(const InteriorMap& f, const Net& net, unsigned threads = 1);

// Lower ratio guaranteed by the declared constants: 1/L - A/a.
double guaranteed_lower_ratio(const InteriorMap& f, double a);

}  // namespace hyperext
