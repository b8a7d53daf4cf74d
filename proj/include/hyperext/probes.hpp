#pragma once

// Randomized sweeps over triangle configurations: angle sums, distances to
// the side opposite an obtuse angle, angle decay, thinness and right triangles.
// Sample i always draws from stream i of the seed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperext/coarse.hpp"
#include "hyperext/sampling.hpp"

namespace hyperext {

// Unit vector orthogonal to u (|u| = 1), uniformly distributed in the
// orthogonal complement within the slice of the given dimension.
Vec3 random_orthogonal(Rng& rng, const Vec3& u, int dim);

struct RightTriangle {
    BallPoint a;  // vertex opposite leg a
    BallPoint b;
    BallPoint c;  // right angle
};

// Legs with lambda-length in [min_leg, max_leg] from a right-angle vertex at
// lambda-radius at most center_radius.
RightTriangle random_right_triangle(Rng& rng, const CurvatureScale& k, int dim, double center_radius = 2.0,
                                    double min_leg = 0.01, double max_leg = 4.0);

// x with angle at x between y and z at least pi/2; y, z each ideal with the
// given probability.
struct ObtuseConfig {
    BallPoint x;
    ClosurePoint y;
    ClosurePoint z;
};
ObtuseConfig random_obtuse_config(Rng& rng, const CurvatureScale& k, int dim, double ideal_probability = 0.25);

// Distance from x to the side yz (ideal ends truncated as for thinness).
// Requires the angle at x to be at least pi/2 - 1e-12.
double distance_to_opposite_side(const CurvatureScale& k, const ObtuseConfig& c);

// Hausdorff distance between yz and xy u xz, by sampling each side.
double opposite_side_hausdorff(const CurvatureScale& k, const ObtuseConfig& c, int samples_per_side = 256);

struct ObtuseSweep {
    double max_distance = 0.0;
    double max_hausdorff = 0.0;  // only when requested
    std::size_t samples = 0;
};
ObtuseSweep obtuse_sweep(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed,
                         bool with_hausdorff, unsigned threads = 1);

// Smallest observed pi - (angle at x + angle at y) over configurations with
// d(x, y) >= min_base and both base angles >= min_angle. The apex is interior
// (third_ideal == false) or ideal.
struct AngleGap {
    double min_gap = 0.0;
    std::size_t accepted = 0;
    std::size_t attempted = 0;
};
AngleGap angle_sum_gap(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed, double min_base,
                       double min_angle, bool third_ideal, unsigned threads = 1);

// For each s in s_grid: the largest angle at z subtended by x, y over samples
// with d(x, z) in [min_xz, 3 min_xz] and d(x, y) <= s. Samples are shared
// across the grid.
struct DecayRow {
    double s;
    double sup_angle;
};
std::vector<DecayRow> angle_decay(const CurvatureScale& k, int dim, std::span<const double> s_grid,
                                  std::size_t count, std::uint64_t seed, double min_xz = 1.0);

// Random triangle for thinness sweeps: interior, mixed or ideal vertices.
Triangle random_triangle(Rng& rng, const CurvatureScale& k, int dim, double radius = 5.0);

struct ThinnessSweep {
    double max_thinness = 0.0;
    std::size_t samples = 0;
};
// Sample i uses lambdas[i % lambdas.size()].
ThinnessSweep thinness_sweep(std::span<const double> lambdas, int dim, std::size_t count, std::uint64_t seed,
                             unsigned threads = 1);

}  // namespace hyperext
