#pragma once

// Coarse measurements in the ball model: projections onto geodesics, triangle
// thinness, quasicenters, Hausdorff distances and comparison triangles.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hyperext/model.hpp"

namespace hyperext {

// Ideal ends of sides are cut where the side meets the sphere of this radius
// (lambda = 1 units, i.e. lambda-radius kTruncationRadius / lambda) about the origin.
inline constexpr double kTruncationRadius = 20.0;

inline constexpr int kThinnessSamplesPerSide = 512;

class Triangle {
  public:
    Triangle(const ClosurePoint& v1, const ClosurePoint& v2, const ClosurePoint& v3);

    const ClosurePoint& operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    bool all_interior() const;
    bool planar() const;  // all vertices in the z = 0 slice

  private:
    std::array<ClosurePoint, 3> v_;
};

// Parameter (on g) of the orthogonal projection of q.
double projection_parameter(const ClosurePoint& q, const Geodesic& g);
BallPoint orthogonal_project(const ClosurePoint& q, const Geodesic& g);

// lambda-distance from an interior point to a complete geodesic (closed form).
double distance_to_geodesic(const BallPoint& x, const Geodesic& g);

// Closed piece [t0, t1] of a geodesic.
struct Segment {
    Geodesic line;
    double t0;
    double t1;
};

// Side from a to b; ideal ends are truncated as described above.
Segment side_segment(const CurvatureScale& k, const ClosurePoint& a, const ClosurePoint& b);

double distance_to_segment(const Vec3& x, const Segment& s);

double thinness(const CurvatureScale& k, const Triangle& t);

struct Quasicenter {
    BallPoint center;
    double c = 0.0;  // max distance to the three sides
    int iterations = 0;
};

class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, Quasicenter best) : std::runtime_error(what), best_(best) {}
    const Quasicenter& best() const { return best_; }

  private:
    Quasicenter best_;
};

inline constexpr int kQuasicenterIterationCap = 10000;
inline constexpr double kQuasicenterTolerance = 1e-8;

// Minimizes the largest distance to the sides by simplex descent. seed == 0
// starts at the Euclidean centroid of the vertices; other seeds perturb the
// start and the initial simplex.
Quasicenter quasicenter(const CurvatureScale& k, const Triangle& t, std::uint64_t seed = 0);

double hausdorff_distance(const CurvatureScale& k, std::span<const BallPoint> a, std::span<const BallPoint> b);

// Hausdorff distance between the piecewise geodesic through the path samples
// and the piece of the geodesic ab it spans (between a and b for interior
// ends, over the path's projection range for ideal ends). Geodesic points are
// sampled every 0.01 lambda = 1 units.
double quasigeodesic_deviation(const CurvatureScale& k, std::span<const BallPoint> path, const ClosurePoint& a,
                               const ClosurePoint& b);

// Angle opposite side `opposite` in the triangle of curvature -kappa^2 with
// the given side lengths.
double comparison_angle(double kappa, double opposite, double side1, double side2);

// Length of the third side given two sides and the included angle.
double included_side(double kappa, double side1, double side2, double angle);

struct TriangleReport {
    std::array<double, 3> angles{};
    std::array<double, 3> side_lengths{};  // side i is opposite vertex i
    double thinness_delta = 0.0;
    BallPoint quasicenter;
    double quasicenter_c = 0.0;
    std::array<double, 3> comparison_angles_lambda{};
    std::array<double, 3> comparison_angles_one{};
    double area_defect = 0.0;
    // Distance between the midpoints of the sides at vertex 0 and its
    // counterparts in the two comparison triangles.
    double midpoint_distance = 0.0;
    double midpoint_distance_lambda = 0.0;
    double midpoint_distance_one = 0.0;
};

TriangleReport comparison_report(const CurvatureScale& k, const Triangle& t);

// pi minus the angle sum; requires lambda == 1. Ideal vertices contribute 0.
double area_defect(const CurvatureScale& k, const Triangle& t);

}  // namespace hyperext
