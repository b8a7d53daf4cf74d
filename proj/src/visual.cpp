#include "hyperext/visual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hyperext/coarse.hpp"
#include "hyperext/format.hpp"
#include "hyperext/probes.hpp"
#include "hyperext/sampling.hpp"

namespace hyperext {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool distinct(const Vec3& a, const Vec3& b) { return norm(a - b) > 1e-12; }

}  // namespace

double visual_dist(const VisualConfig& cfg, const IdealPoint& xi, const IdealPoint& eta) {
    if (same_point(xi, eta)) return 0.0;
    return std::exp(-distance_to_geodesic(cfg.base, geodesic_between(cfg.k, xi, eta)));
}

std::vector<VisualAnglePair> angle_visual_probe(const CurvatureScale& k, int dim, std::size_t samples,
                                                std::uint64_t seed, double radius) {
    std::vector<VisualAnglePair> out;
    out.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, dim, k, radius);
        const Vec3 u = random_unit(rng, dim);
        const Vec3 v = random_orthogonal(rng, u, dim);
        const double a = std::exp(uniform(rng, std::log(1e-6), std::log(kPi)));
        const IdealPoint xi = ray_limit(x, u);
        const IdealPoint eta = ray_limit(x, std::cos(a) * u + std::sin(a) * v);
        if (same_point(xi, eta)) continue;
        out.push_back({visual_dist({x, k}, xi, eta), angle(x, xi, eta)});
    }
    return out;
}

double visual_threshold_for_angle(const std::vector<VisualAnglePair>& table, double eps) {
    double best = kInf;
    for (const auto& p : table)
        if (p.angle >= eps) best = std::min(best, p.visual);
    return best;
}

double angle_threshold_for_visual(const std::vector<VisualAnglePair>& table, double eps) {
    double best = kInf;
    for (const auto& p : table)
        if (p.visual >= eps) best = std::min(best, p.angle);
    return best;
}

std::pair<double, double> geodesic_proximity_probe(const CurvatureScale& k, const IdealPoint& p, const IdealPoint& xi,
                                                   const IdealPoint& eta, const BallPoint& x) {
    if (!distinct(p.coords(), xi.coords()) || !distinct(p.coords(), eta.coords()) ||
        !distinct(xi.coords(), eta.coords()))
        throw DomainError("geodesic_proximity_probe: p, xi, eta must be pairwise distinct");
    if (distance_to_geodesic(x, geodesic_between(k, p, xi)) > 1e-9)
        throw DomainError("geodesic_proximity_probe: x is not on the geodesic p xi");
    return {visual_dist({x, k}, xi, eta), distance_to_geodesic(x, geodesic_between(k, p, eta))};
}

double near_perpendicular_probe(const BallPoint& x, const BallPoint& y, const IdealPoint& xi) {
    if (same_point(x, y)) throw DomainError("near_perpendicular_probe: x and y coincide");
    const double at_x = angle(x, y, xi);
    if (at_x >= kPi / 2 - 1e-12) throw DomainError("near_perpendicular_probe: angle at x must be below pi/2");
    if (angle(y, x, xi) > kPi / 2) throw DomainError("near_perpendicular_probe: angle at y exceeds pi/2");
    return at_x;
}

double near_perpendicular_bound(const CurvatureScale& k, double d) {
    return std::asin(1.0 / std::cosh(k.lambda() * d));
}

double near_perpendicular_sweep(const CurvatureScale& k, int dim, double d, std::size_t samples, std::uint64_t seed) {
    double inf = kInf;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        for (int attempt = 0; attempt < 100; ++attempt) {
            const BallPoint x = random_ball_point(rng, dim, k, 3.0);
            const Vec3 u = random_unit(rng, dim);
            const Vec3 v = random_orthogonal(rng, u, dim);
            const BallPoint y = exp_map(tangent_with_length(k, x, u, d));
            const double a = uniform(rng, 0.0, kPi / 2);
            const IdealPoint xi = ray_limit(x, std::cos(a) * u + std::sin(a) * v);
            if (angle(x, y, xi) >= kPi / 2 - 1e-12 || angle(y, x, xi) > kPi / 2) continue;
            inf = std::min(inf, near_perpendicular_probe(x, y, xi));
            break;
        }
    }
    return inf;
}

std::pair<BallPoint, BallPoint> paired_basepoints(const CurvatureScale& k, const BoundaryMap& h, const IdealPoint& p,
                                                  const IdealPoint& q, const IdealPoint& r) {
    const BallPoint x = orthogonal_project(r, geodesic_between(k, p, q));
    const BallPoint xp = orthogonal_project(h(r), geodesic_between(k, h(p), h(q)));
    return {x, xp};
}

QsCloud qs_cloud(const BoundaryMap& h, const VisualConfig& cfg, const VisualConfig& cfg_image, int dim,
                 std::size_t triples, std::uint64_t seed) {
    QsCloud cloud;
    cloud.points.reserve(triples);
    for (std::size_t i = 0; i < triples; ++i) {
        Rng rng = make_rng(seed, i);
        for (;;) {
            const IdealPoint a = random_ideal(rng, dim), b = random_ideal(rng, dim), c = random_ideal(rng, dim);
            if (norm(a.coords() - b.coords()) < 1e-6 || norm(a.coords() - c.coords()) < 1e-6 ||
                norm(b.coords() - c.coords()) < 1e-6)
                continue;
            const double t = visual_dist(cfg, a, b) / visual_dist(cfg, a, c);
            const IdealPoint ha = h(a);
            const double ratio = visual_dist(cfg_image, ha, h(b)) / visual_dist(cfg_image, ha, h(c));
            if (!(t > 0.0 && std::isfinite(t) && ratio > 0.0 && std::isfinite(ratio))) continue;
            cloud.points.push_back({t, ratio});
            break;
        }
    }
    fit_envelope(cloud);
    return cloud;
}

void fit_envelope(QsCloud& cloud) {
    constexpr int kBins = 32;
    constexpr std::size_t kMinPerBin = 10;
    if (cloud.points.empty()) throw DomainError("fit_envelope: empty cloud");
    double lo = kInf, hi = -kInf;
    for (const auto& p : cloud.points) {
        lo = std::min(lo, std::log(p.t));
        hi = std::max(hi, std::log(p.t));
    }
    const double width = (hi - lo) / kBins;
    std::vector<std::vector<std::pair<double, double>>> bins(kBins);  // (log ratio, log t)
    for (const auto& p : cloud.points) {
        const double lt = std::log(p.t);
        int b = width > 0.0 ? static_cast<int>((lt - lo) / width) : 0;
        b = std::clamp(b, 0, kBins - 1);
        bins[static_cast<std::size_t>(b)].emplace_back(std::log(p.ratio), lt);
    }
    std::vector<std::pair<double, double>> witness;  // (log t, log ratio)
    for (auto& bin : bins) {
        if (bin.size() < kMinPerBin) continue;
        std::sort(bin.begin(), bin.end());
        const auto idx = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(bin.size()))) - 1;
        witness.emplace_back(bin[idx].second, bin[idx].first);
    }
    cloud.bins_used = witness.size();
    if (witness.size() < 2) throw DomainError("fit_envelope: fewer than two populated bins");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : witness) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(witness.size());
    const double mx = sx / n, my = sy / n;
    cloud.alpha = (sxy - n * mx * my) / (sxx - n * mx * mx);
    cloud.c = std::exp(my - cloud.alpha * mx);
}

std::string qs_cloud_csv(const QsCloud& cloud) {
    std::ostringstream os;
    os << "t,ratio\n";
    for (const auto& p : cloud.points) os << format_number(p.t) << ',' << format_number(p.ratio) << '\n';
    return os.str();
}

}  // namespace hyperext
