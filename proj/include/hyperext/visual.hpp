#pragma once

// Visual metric d_x(xi, eta) = exp(-d(x, xi eta)) on the ideal sphere and the
// probes relating it to angles, distances to geodesics and boundary maps.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperext/maps.hpp"
#include "hyperext/model.hpp"

namespace hyperext {

struct VisualConfig {
    BallPoint base;
    CurvatureScale k;
};

double visual_dist(const VisualConfig& cfg, const IdealPoint& xi, const IdealPoint& eta);

struct VisualAnglePair {
    double visual;  // d_x(xi, eta)
    double angle;   // angle at x between xi and eta
};

// Random x in the ball of the given radius and pairs xi != eta seen from x at
// angles log-uniform in [1e-6, pi].
std::vector<VisualAnglePair> angle_visual_probe(const CurvatureScale& k, int dim, std::size_t samples,
                                                std::uint64_t seed, double radius = 3.0);

// Smallest visual distance among pairs with angle >= eps (infinity if none):
// pairs closer than this all have angle < eps.
double visual_threshold_for_angle(const std::vector<VisualAnglePair>& table, double eps);
// Smallest angle among pairs with visual distance >= eps (infinity if none).
double angle_threshold_for_visual(const std::vector<VisualAnglePair>& table, double eps);

// (d_x(xi, eta), d(x, p eta)) for x on the geodesic p xi.
std::pair<double, double> geodesic_proximity_probe(const CurvatureScale& k, const IdealPoint& p, const IdealPoint& xi,
                                                   const IdealPoint& eta, const BallPoint& x);

// Angle at x between y and xi; requires angle_x(y, xi) < pi/2 (with a 1e-12
// margin) and angle_y(x, xi) <= pi/2.
double near_perpendicular_probe(const BallPoint& x, const BallPoint& y, const IdealPoint& xi);

// arcsin(1 / cosh(lambda d)): lower bound for the probe at d(x, y) = d.
double near_perpendicular_bound(const CurvatureScale& k, double d);

// Smallest probe value over random admissible configurations with d(x, y) = d.
double near_perpendicular_sweep(const CurvatureScale& k, int dim, double d, std::size_t samples, std::uint64_t seed);

struct QsPoint {
    double t;
    double ratio;
};

struct QsCloud {
    std::vector<QsPoint> points;
    double alpha = 0.0;  // fitted exponent
    double c = 0.0;      // fitted coefficient
    std::size_t bins_used = 0;
};

// Basepoints x = P_pq(r) and x' = P_{h(p)h(q)}(h(r)).
std::pair<BallPoint, BallPoint> paired_basepoints(const CurvatureScale& k, const BoundaryMap& h, const IdealPoint& p,
                                                  const IdealPoint& q, const IdealPoint& r);

QsCloud qs_cloud(const BoundaryMap& h, const VisualConfig& cfg, const VisualConfig& cfg_image, int dim,
                 std::size_t triples, std::uint64_t seed);

// Upper-envelope fit: 32 bins in log t, bins with at least 10 points
// contribute their 99th-percentile log ratio, least squares through those.
void fit_envelope(QsCloud& cloud);

std::string qs_cloud_csv(const QsCloud& cloud);

}  // namespace hyperext
