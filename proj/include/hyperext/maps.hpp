#pragma once

// Parametric boundary maps h of the ideal sphere and interior maps f of the
// ball with declared quasiisometry constants (L, A).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperext/model.hpp"

namespace hyperext {

class BoundaryMap {
  public:
    static BoundaryMap identity();
    static BoundaryMap mobius(const MobiusIsometry& g);
    // Azimuth about e3: theta -> theta + a sin(k theta). Requires |a k| < 1, k != 0.
    static BoundaryMap angle_warp(double a, int k);
    // Polar angle phi from e_dim: phi -> phi + a sin(k phi). Requires |a k| < 1, k != 0.
    static BoundaryMap latitude_warp(double a, int k, int dim);
    // maps.front() is applied first.
    static BoundaryMap composite(const std::vector<BoundaryMap>& maps);

    IdealPoint operator()(const IdealPoint& xi) const { return IdealPoint::from_direction(f_(xi.coords())); }
    Vec3 apply(const Vec3& unit) const { return f_(unit); }

    const std::string& family() const { return family_; }
    double declared_L() const { return L_; }
    double declared_A() const { return A_; }

  private:
    BoundaryMap(std::string family, std::function<Vec3(const Vec3&)> f, double L, double A)
        : family_(std::move(family)), f_(std::move(f)), L_(L), A_(A) {}

    std::string family_;
    std::function<Vec3(const Vec3&)> f_;
    double L_ = 1.0;
    double A_ = 0.0;
};

// Bilipschitz constant max(1 + |ak|, 1 / (1 - |ak|)) of theta -> theta + a sin(k theta).
double warp_lipschitz(double a, int k);

class InteriorMap {
  public:
    static InteriorMap mobius(const MobiusIsometry& g);
    // g composed with a deterministic displacement of lambda-length at most
    // amplitude (<= 1) at every point.
    static InteriorMap jittered_isometry(const MobiusIsometry& g, const CurvatureScale& k, double amplitude, int dim);
    // Keeps the distance to the origin and applies angle_warp(a, k) to the direction.
    static InteriorMap polar_warp(double a, int k);

    BallPoint operator()(const BallPoint& x) const { return BallPoint::clamped(f_(x.coords())); }

    const std::string& family() const { return family_; }
    const BoundaryMap& boundary_map() const { return boundary_; }
    double declared_L() const { return L_; }
    double declared_A() const { return A_; }

  private:
    InteriorMap(std::string family, std::function<Vec3(const Vec3&)> f, BoundaryMap boundary, double L, double A)
        : family_(std::move(family)), f_(std::move(f)), boundary_(std::move(boundary)), L_(L), A_(A) {}

    std::string family_;
    std::function<Vec3(const Vec3&)> f_;
    BoundaryMap boundary_;
    double L_ = 1.0;
    double A_ = 0.0;
};

struct BoundaryMapCheck {
    double max_norm_error = 0.0;        // | |h(xi)| - 1 | before normalization
    double min_image_separation = 0.0;  // chordal, over distinct sample pairs
    bool injective = true;              // no pair of images within 1e-8
};
BoundaryMapCheck check_boundary_map(const BoundaryMap& h, int dim, std::size_t samples, std::uint64_t seed);

struct QuasiIsometryCheck {
    double lower_excess = 0.0;  // max of d/L - A - d(f x, f y); <= 0 when the bound holds
    double upper_excess = 0.0;  // max of d(f x, f y) - L d - A
    bool holds() const { return lower_excess <= 1e-9 && upper_excess <= 1e-9; }
};
QuasiIsometryCheck check_quasiisometry(const InteriorMap& f, const CurvatureScale& k, int dim, std::size_t pairs,
                                       std::uint64_t seed, double radius = 6.0);

// Largest chordal distance between h(xi) and the direction of f at Euclidean
// radius 1 - 1e-9 along xi.
double boundary_disagreement(const InteriorMap& f, int dim, std::size_t samples, std::uint64_t seed);

}  // namespace hyperext
