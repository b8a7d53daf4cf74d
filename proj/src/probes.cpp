#include "hyperext/probes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "golden.hpp"

namespace hyperext {

namespace {

constexpr double kPi = std::numbers::pi;

BallPoint walk(const CurvatureScale& k, const BallPoint& x, const Vec3& dir, double length) {
    return exp_map(tangent_with_length(k, x, dir, length));
}

// Largest value of f over the segment, by uniform sampling and a golden
// refinement around the best sample.
double sup_along(const Segment& s, const std::function<double(const Vec3&)>& f, int samples) {
    auto at = [&](double t) { return f(s.line.point_at(t).coords()); };
    const double h = (s.t1 - s.t0) / (samples - 1);
    int arg = 0;
    double best = -1.0;
    for (int j = 0; j < samples; ++j) {
        const double v = at(s.t0 + h * j);
        if (v > best) best = v, arg = j;
    }
    const double lo = s.t0 + h * std::max(0, arg - 1);
    const double hi = s.t0 + h * std::min(samples - 1, arg + 1);
    return std::max(best, detail::golden_maximize(at, lo, hi, 40).second);
}

ClosurePoint endpoint(Rng& rng, const CurvatureScale& k, const BallPoint& x, const Vec3& dir,
                      double ideal_probability) {
    if (uniform(rng, 0.0, 1.0) < ideal_probability) return ray_limit(x, dir);
    return walk(k, x, dir, uniform(rng, 0.05, 6.0) / k.lambda());
}

}  // namespace

Vec3 random_orthogonal(Rng& rng, const Vec3& u, int dim) {
    if (dim == 2) {
        const Vec3 v = orthogonal_unit(u, 2);
        return uniform(rng, 0.0, 1.0) < 0.5 ? v : -1.0 * v;
    }
    for (;;) {
        const Vec3 r = random_unit(rng, 3);
        const Vec3 v = r - dot(r, u) * u;
        if (norm(v) > 1e-3) return normalized(v);
    }
}

RightTriangle random_right_triangle(Rng& rng, const CurvatureScale& k, int dim, double center_radius,
                                    double min_leg, double max_leg) {
    const BallPoint c = random_ball_point(rng, dim, k, center_radius);
    const Vec3 u = random_unit(rng, dim);
    const Vec3 v = random_orthogonal(rng, u, dim);
    const double lam = k.lambda();
    const BallPoint b = walk(k, c, u, uniform(rng, min_leg, max_leg) / lam);
    const BallPoint a = walk(k, c, v, uniform(rng, min_leg, max_leg) / lam);
    return {a, b, c};
}

ObtuseConfig random_obtuse_config(Rng& rng, const CurvatureScale& k, int dim, double ideal_probability) {
    const BallPoint x = random_ball_point(rng, dim, k, 3.0);
    const Vec3 u = random_unit(rng, dim);
    const Vec3 v = random_orthogonal(rng, u, dim);
    const double a = uniform(rng, kPi / 2, kPi);
    const Vec3 w = std::cos(a) * u + std::sin(a) * v;
    return {x, endpoint(rng, k, x, u, ideal_probability), endpoint(rng, k, x, w, ideal_probability)};
}

double distance_to_opposite_side(const CurvatureScale& k, const ObtuseConfig& c) {
    if (angle(c.x, c.y, c.z) < kPi / 2 - 1e-12) throw DomainError("distance_to_opposite_side: angle at x below pi/2");
    return distance_to_segment(c.x.coords(), side_segment(k, c.y, c.z));
}

double opposite_side_hausdorff(const CurvatureScale& k, const ObtuseConfig& c, int samples_per_side) {
    const Segment yz = side_segment(k, c.y, c.z);
    const Segment xy = side_segment(k, c.x, c.y);
    const Segment xz = side_segment(k, c.x, c.z);
    const double from_yz = sup_along(
        yz, [&](const Vec3& p) { return std::min(distance_to_segment(p, xy), distance_to_segment(p, xz)); },
        samples_per_side);
    auto to_yz = [&](const Vec3& p) { return distance_to_segment(p, yz); };
    return std::max({from_yz, sup_along(xy, to_yz, samples_per_side), sup_along(xz, to_yz, samples_per_side)});
}

ObtuseSweep obtuse_sweep(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed,
                         bool with_hausdorff, unsigned threads) {
    std::vector<double> dist(count), hd(count, 0.0);
    parallel_for(count, threads, [&](std::size_t i) {
        Rng rng = make_rng(seed, i);
        const ObtuseConfig c = random_obtuse_config(rng, k, dim);
        dist[i] = distance_to_opposite_side(k, c);
        if (with_hausdorff) hd[i] = opposite_side_hausdorff(k, c);
    });
    ObtuseSweep out;
    out.samples = count;
    for (std::size_t i = 0; i < count; ++i) {
        out.max_distance = std::max(out.max_distance, dist[i]);
        out.max_hausdorff = std::max(out.max_hausdorff, hd[i]);
    }
    return out;
}

AngleGap angle_sum_gap(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed, double min_base,
                       double min_angle, bool third_ideal, unsigned threads) {
    constexpr int kAttemptsPerSample = 200;
    std::vector<double> gap(count, std::numeric_limits<double>::infinity());
    std::vector<int> tries(count, 0);
    parallel_for(count, threads, [&](std::size_t i) {
        Rng rng = make_rng(seed, i);
        for (int attempt = 0; attempt < kAttemptsPerSample; ++attempt) {
            ++tries[i];
            const BallPoint x = random_ball_point(rng, dim, k, 3.0);
            const Vec3 u = random_unit(rng, dim);
            const Vec3 v = random_orthogonal(rng, u, dim);
            const BallPoint y = walk(k, x, u, min_base + uniform(rng, 0.0, 1.0) / k.lambda());
            const double a = uniform(rng, min_angle, kPi);
            const Vec3 w = std::cos(a) * u + std::sin(a) * v;
            const ClosurePoint z = third_ideal ? ClosurePoint(ray_limit(x, w))
                                               : ClosurePoint(walk(k, x, w, uniform(rng, 0.05, 8.0) / k.lambda()));
            const double ax = angle(x, y, z), ay = angle(y, x, z);
            if (ax < min_angle || ay < min_angle) continue;
            gap[i] = kPi - ax - ay;
            return;
        }
    });
    AngleGap out;
    out.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        out.attempted += static_cast<std::size_t>(tries[i]);
        if (std::isfinite(gap[i])) {
            ++out.accepted;
            out.min_gap = std::min(out.min_gap, gap[i]);
        }
    }
    return out;
}

std::vector<DecayRow> angle_decay(const CurvatureScale& k, int dim, std::span<const double> s_grid,
                                  std::size_t count, std::uint64_t seed, double min_xz) {
    std::vector<DecayRow> rows;
    for (double s : s_grid) rows.push_back({s, 0.0});
    for (std::size_t i = 0; i < count; ++i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, dim, k, 3.0);
        const BallPoint z = walk(k, x, random_unit(rng, dim), uniform(rng, min_xz, 3.0 * min_xz));
        const Vec3 dir = random_unit(rng, dim);
        const double frac = uniform(rng, 0.0, 1.0);
        for (auto& row : rows) {
            const double len = frac * row.s;
            if (len <= 0.0) continue;
            row.sup_angle = std::max(row.sup_angle, angle(z, x, walk(k, x, dir, len)));
        }
    }
    return rows;
}

Triangle random_triangle(Rng& rng, const CurvatureScale& k, int dim, double radius) {
    for (;;) {
        const int mode = static_cast<int>(uniform(rng, 0.0, 3.0));
        std::vector<ClosurePoint> v;
        for (int j = 0; j < 3; ++j) {
            const bool ideal = mode == 2 || (mode == 1 && uniform(rng, 0.0, 1.0) < 0.5);
            if (ideal)
                v.emplace_back(random_ideal(rng, dim));
            else
                v.emplace_back(random_ball_point(rng, dim, k, radius));
        }
        try {
            return {v[0], v[1], v[2]};
        } catch (const DomainError&) {
        }
    }
}

ThinnessSweep thinness_sweep(std::span<const double> lambdas, int dim, std::size_t count, std::uint64_t seed,
                             unsigned threads) {
    std::vector<double> value(count);
    parallel_for(count, threads, [&](std::size_t i) {
        const CurvatureScale k(lambdas[i % lambdas.size()]);
        Rng rng = make_rng(seed, i);
        value[i] = thinness(k, random_triangle(rng, k, dim));
    });
    ThinnessSweep out;
    out.samples = count;
    for (double v : value) out.max_thinness = std::max(out.max_thinness, v);
    return out;
}

}  // namespace hyperext
