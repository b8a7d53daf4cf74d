#pragma once

// Extension of a boundary map h to the interior: F(x) is the point of the
// projection of h(E_x) onto the geodesic h(q_x) h(p) closest to h(p), where
// q_x is the far end of the geodesic from p through x and E_x the equator of
// ideal points seen from x perpendicular to that geodesic.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperext/maps.hpp"
#include "hyperext/model.hpp"

namespace hyperext {

struct ExtensionConfig {
    CurvatureScale k;
    int dim = 2;
    IdealPoint p{-1.0, 0.0, 0.0};
    int equator_samples = 64;  // used when dim == 3
    int refine_iters = 60;     // golden-section steps on the equator circle (dim == 3)
    double tol = 1e-12;        // projection parameters within tol count as ties

    void validate() const;
};

IdealPoint q_of(const BallPoint& x, const IdealPoint& p);

// dim == 2: the two endpoints; dim == 3: m points equally spaced on the circle.
std::vector<IdealPoint> equator(const BallPoint& x, const IdealPoint& p, int dim, int m);

struct ExtensionPoint {
    BallPoint value;     // F(x)
    double t_x = 0.0;    // parameter of F(x) on the image geodesic, from h(q_x) toward h(p)
    double t_min = 0.0;  // smallest projection parameter of h(E_x)
    int witness = 0;     // equator sample attaining t_x
};

ExtensionPoint extend_detailed(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x);
BallPoint extend(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x);

struct ProjectionSpan {
    double t_min = 0.0;
    double t_max = 0.0;
    double length = 0.0;
    int witness = 0;
};
ProjectionSpan projection_span(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x);

// Largest span length over random x in the ball of the given radius.
double max_projection_span(const BoundaryMap& h, const ExtensionConfig& cfg, double radius, std::size_t samples,
                           std::uint64_t seed, unsigned threads = 1);

struct BoundaryBounds {
    double b1 = 0.0, b2 = 0.0;  // min / max of d_x(beta, q_x)
    double b3 = 0.0, b4 = 0.0;  // min / max of d_F(x)(h(q_x), h(beta))
};
BoundaryBounds boundary_bounds_check(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                     std::size_t samples, std::uint64_t seed);

struct ModulusRow {
    double eps;
    double omega;  // largest d(F x, F y) over sampled pairs with d(x, y) <= eps
    double delta;  // smallest d(F x, F y) over sampled y on spheres S(x, eps)
};
// directions: sphere points per center and radius.
std::vector<ModulusRow> continuity_modulus(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                           std::span<const double> eps_grid, std::size_t centers, int directions,
                                           std::uint64_t seed, unsigned threads = 1);

// Largest d(F x, f x) over random x in the ball, with h = f's boundary map.
double compare_to_interior(const InteriorMap& f, const ExtensionConfig& cfg, double radius, std::size_t samples,
                           std::uint64_t seed, unsigned threads = 1);

// Largest d(F_p1 x, F_p2 x) over random x in the ball.
double basepoint_sensitivity(const BoundaryMap& h, const ExtensionConfig& cfg, const IdealPoint& p1,
                             const IdealPoint& p2, double radius, std::size_t samples, std::uint64_t seed);

// Euclidean cube grid with per_axis points per axis over the ball of the given
// hyperbolic radius, keeping the points inside it.
std::vector<BallPoint> ball_grid(const CurvatureScale& k, int dim, double radius, int per_axis);

struct FieldRow {
    BallPoint x;
    ExtensionPoint f;
    double span_length;
};
std::vector<FieldRow> extension_field(const BoundaryMap& h, const ExtensionConfig& cfg,
                                      std::span<const BallPoint> points, unsigned threads = 1);

// Columns x1..xn, F1..Fn, t_x, span_length.
std::string extension_field_csv(std::span<const FieldRow> rows, int dim);

}  // namespace hyperext
