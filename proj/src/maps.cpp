#include "hyperext/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hyperext/sampling.hpp"

namespace hyperext {

namespace {

constexpr double kPi = std::numbers::pi;

void require_warp(double a, int k, const char* who) {
    if (k == 0 || !(std::abs(a * k) < 1.0)) throw ConfigError(std::string(who) + ": requires |a k| < 1 and k != 0");
}

Vec3 warp_azimuth(const Vec3& v, double a, int k) {
    const double rho = std::hypot(v.x, v.y);
    if (rho == 0.0) return v;
    const double th = std::atan2(v.y, v.x);
    const double w = th + a * std::sin(k * th);
    return {rho * std::cos(w), rho * std::sin(w), v.z};
}

// Largest bilipschitz distortion of the latitude warp on S^2: the derivative
// along meridians and the ratio of parallel circle lengths.
double latitude_lipschitz(double a, int k) {
    double worst = warp_lipschitz(a, k);
    constexpr int kGrid = 20000;
    for (int i = 1; i < kGrid; ++i) {
        const double phi = kPi * i / kGrid;
        const double ratio = std::sin(phi + a * std::sin(k * phi)) / std::sin(phi);
        worst = std::max({worst, ratio, 1.0 / ratio});
    }
    return worst * (1.0 + 1e-9);
}

}  // namespace

double warp_lipschitz(double a, int k) {
    const double s = std::abs(a * k);
    return std::max(1.0 + s, 1.0 / (1.0 - s));
}

BoundaryMap BoundaryMap::identity() {
    return {"identity", [](const Vec3& v) { return v; }, 1.0, 0.0};
}

BoundaryMap BoundaryMap::mobius(const MobiusIsometry& g) {
    return {"mobius_boundary", [g](const Vec3& v) { return g.apply(v); }, 1.0, 0.0};
}

BoundaryMap BoundaryMap::angle_warp(double a, int k) {
    require_warp(a, k, "angle_warp");
    return {"angle_warp", [a, k](const Vec3& v) { return warp_azimuth(v, a, k); }, warp_lipschitz(a, k), 0.0};
}

BoundaryMap BoundaryMap::latitude_warp(double a, int k, int dim) {
    require_warp(a, k, "latitude_warp");
    if (dim != 2 && dim != 3) throw ConfigError("latitude_warp: dim must be 2 or 3");
    const Vec3 pole = dim == 3 ? kE3 : kE2;
    auto f = [a, k, pole](const Vec3& v) {
        const double c = dot(v, pole);
        const Vec3 side = v - c * pole;
        const double s = norm(side);
        if (s == 0.0) return v;
        const double phi = std::atan2(s, c);
        const double w = phi + a * std::sin(k * phi);
        return std::cos(w) * pole + (std::sin(w) / s) * side;
    };
    const double L = dim == 3 ? latitude_lipschitz(a, k) : warp_lipschitz(a, k);
    return {"latitude_warp", f, L, 0.0};
}

BoundaryMap BoundaryMap::composite(const std::vector<BoundaryMap>& maps) {
    if (maps.empty()) return identity();
    double L = 1.0, A = 0.0;
    for (const auto& m : maps) {
        A = m.declared_L() * A + m.declared_A();
        L *= m.declared_L();
    }
    auto f = [maps](const Vec3& v) {
        Vec3 w = v;
        for (const auto& m : maps) w = normalized(m.apply(w));
        return w;
    };
    return {"composite", f, L, A};
}

InteriorMap InteriorMap::mobius(const MobiusIsometry& g) {
    return {"mobius", [g](const Vec3& x) { return g.apply(x); }, BoundaryMap::mobius(g), 1.0, 0.0};
}

InteriorMap InteriorMap::jittered_isometry(const MobiusIsometry& g, const CurvatureScale& k, double amplitude,
                                           int dim) {
    if (!(amplitude >= 0.0 && amplitude <= 1.0)) throw ConfigError("jittered_isometry: amplitude must be in [0, 1]");
    auto f = [g, k, amplitude, dim](const Vec3& x) {
        // Smooth field with |u| <= 1.
        Vec3 u{std::sin(3.1 * x.x + 1.7 * x.y + 0.4 * x.z + 0.3), std::sin(2.9 * x.x - 2.3 * x.y + 1.1 * x.z + 1.1),
               dim == 3 ? std::sin(0.7 * x.x - 1.3 * x.y + 1.9 * x.z + 2.0) : 0.0};
        u = u / std::sqrt(static_cast<double>(dim));
        const double len = norm(u);
        if (len == 0.0 || amplitude == 0.0) return g.apply(x);
        const BallPoint moved = exp_map(tangent_with_length(k, BallPoint::clamped(x), u / len, amplitude * len));
        return g.apply(moved.coords());
    };
    return {"jittered_isometry", f, BoundaryMap::mobius(g), 1.0, 2.0 * amplitude};
}

InteriorMap InteriorMap::polar_warp(double a, int k) {
    BoundaryMap h = BoundaryMap::angle_warp(a, k);
    auto f = [a, k](const Vec3& x) { return warp_azimuth(x, a, k); };
    return {"polar_warp", f, h, h.declared_L(), 0.0};
}

BoundaryMapCheck check_boundary_map(const BoundaryMap& h, int dim, std::size_t samples, std::uint64_t seed) {
    std::vector<Vec3> pre(samples), img(samples);
    BoundaryMapCheck out;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        pre[i] = random_unit(rng, dim);
        const Vec3 raw = h.apply(pre[i]);
        out.max_norm_error = std::max(out.max_norm_error, std::abs(norm(raw) - 1.0));
        img[i] = normalized(raw);
    }
    out.min_image_separation = samples > 1 ? 2.0 : 0.0;
    for (std::size_t i = 0; i < samples; ++i)
        for (std::size_t j = i + 1; j < samples; ++j) {
            if (norm(pre[i] - pre[j]) <= 1e-12) continue;
            const double d = norm(img[i] - img[j]);
            out.min_image_separation = std::min(out.min_image_separation, d);
            if (d < 1e-8) out.injective = false;
        }
    return out;
}

QuasiIsometryCheck check_quasiisometry(const InteriorMap& f, const CurvatureScale& k, int dim, std::size_t pairs,
                                       std::uint64_t seed, double radius) {
    QuasiIsometryCheck out;
    out.lower_excess = out.upper_excess = -std::numeric_limits<double>::infinity();
    const double L = f.declared_L(), A = f.declared_A();
    for (std::size_t i = 0; i < pairs; ++i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, dim, k, radius);
        // Half of the pairs are close together, where multiplicative distortion shows.
        const BallPoint y = i % 2 ? random_ball_point(rng, dim, k, radius)
                                  : exp_map(tangent_with_length(k, x, random_unit(rng, dim), uniform(rng, 1e-3, 0.5)));
        const double d = hyp_dist(k, x, y);
        const double fd = hyp_dist(k, f(x), f(y));
        out.lower_excess = std::max(out.lower_excess, d / L - A - fd);
        out.upper_excess = std::max(out.upper_excess, fd - L * d - A);
    }
    return out;
}

double boundary_disagreement(const InteriorMap& f, int dim, std::size_t samples, std::uint64_t seed) {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        const Vec3 xi = random_unit(rng, dim);
        const Vec3 far = f(BallPoint((1.0 - 1e-9) * xi)).coords();
        worst = std::max(worst, norm(normalized(far) - f.boundary_map().apply(xi)));
    }
    return worst;
}

}  // namespace hyperext
