#include "hyperext/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "golden.hpp"
#include "hyperext/sampling.hpp"
#include "nelder_mead.hpp"

namespace hyperext {

namespace {

constexpr double kPi = std::numbers::pi;

// lambda = 1 distance between two points of the open ball.
double unit_dist(const Vec3& p, const Vec3& q) {
    return arcosh1p(2.0 * norm2(p - q) / ((1.0 - norm2(p)) * (1.0 - norm2(q))));
}

// Foot of the perpendicular from w onto the diameter along u, as a signed
// Euclidean coordinate. Perpendiculars to a diameter are Euclidean chords
// orthogonal to it in the Klein model; this is that foot pulled back.
double diameter_foot(const Vec3& w, const Vec3& u) {
    // (1 + |w|^2)^2 - 4 x^2 factors as |w - u|^2 |w + u|^2, which keeps
    // precision when w is close to an end of the diameter.
    const double x = dot(w, u);
    return 2.0 * x / (1.0 + norm2(w) + norm(w - u) * norm(w + u));
}

// Parameter where the geodesic meets the sphere of lambda = 1 radius
// kTruncationRadius about the origin, on the side given by `sign`.
double truncated_parameter(const Geodesic& g, double sign) {
    const double lam = g.lambda();
    const BallPoint origin;
    const double t_foot = projection_parameter(origin, g);
    const double d0 = lam * distance_to_geodesic(origin, g);
    double reach = kTruncationRadius;
    if (d0 < kTruncationRadius) reach = std::acosh(std::cosh(kTruncationRadius) / std::cosh(d0));
    return t_foot + sign * reach / lam;
}

}  // namespace

Triangle::Triangle(const ClosurePoint& v1, const ClosurePoint& v2, const ClosurePoint& v3) : v_{v1, v2, v3} {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (same_point(v_[static_cast<std::size_t>(i)], v_[static_cast<std::size_t>(j)]))
                throw DomainError("Triangle: vertices must be pairwise distinct");
}

bool Triangle::all_interior() const {
    return std::none_of(v_.begin(), v_.end(), [](const ClosurePoint& p) { return p.is_ideal(); });
}

bool Triangle::planar() const {
    return std::all_of(v_.begin(), v_.end(), [](const ClosurePoint& p) { return p.coords().z == 0.0; });
}

double projection_parameter(const ClosurePoint& q, const Geodesic& g) {
    if (q.is_ideal()) {
        const Vec3& c = q.coords();
        if (norm(c - g.start().coords()) <= 1e-12 || norm(c - g.end().coords()) <= 1e-12)
            throw DomainError("orthogonal_project: point is an ideal endpoint of the geodesic");
    }
    const double s = diameter_foot(g.to_frame(q.coords()), g.direction());
    return 2.0 * std::atanh(std::clamp(s, -kInteriorGuard, kInteriorGuard)) / g.lambda();
}

BallPoint orthogonal_project(const ClosurePoint& q, const Geodesic& g) {
    return g.point_at(projection_parameter(q, g));
}

double distance_to_geodesic(const BallPoint& x, const Geodesic& g) {
    const Vec3 w = g.to_frame(x.coords());
    const double along = dot(w, g.direction());
    // Norm of the rejection rather than sqrt(|w|^2 - along^2), which cancels.
    const double perp = norm(w - along * g.direction());
    return std::asinh(2.0 * perp / (1.0 - norm2(w))) / g.lambda();
}

Segment side_segment(const CurvatureScale& k, const ClosurePoint& a, const ClosurePoint& b) {
    Geodesic g = geodesic_between(k, a, b);
    const double t0 = a.is_ideal() ? truncated_parameter(g, -1.0) : g.parameter_of(a.coords());
    const double t1 = b.is_ideal() ? truncated_parameter(g, +1.0) : g.parameter_of(b.coords());
    return {std::move(g), std::min(t0, t1), std::max(t0, t1)};
}

double distance_to_segment(const Vec3& x, const Segment& s) {
    const Geodesic& g = s.line;
    const double lam = g.lambda();
    const Vec3 w = g.to_frame(x);
    const double foot = diameter_foot(w, g.direction());
    const double t = std::clamp(2.0 * std::atanh(std::clamp(foot, -kInteriorGuard, kInteriorGuard)) / lam, s.t0, s.t1);
    const Vec3 p = std::tanh(0.5 * lam * t) * g.direction();
    return unit_dist(w, p) / lam;
}

double thinness(const CurvatureScale& k, const Triangle& t) {
    const std::array<Segment, 3> sides{side_segment(k, t[0], t[1]), side_segment(k, t[1], t[2]),
                                       side_segment(k, t[2], t[0])};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Segment& s = sides[static_cast<std::size_t>(i)];
        const Segment& o1 = sides[static_cast<std::size_t>((i + 1) % 3)];
        const Segment& o2 = sides[static_cast<std::size_t>((i + 2) % 3)];
        auto gap = [&](double param) {
            const Vec3 p = s.line.point_at(param).coords();
            return std::min(distance_to_segment(p, o1), distance_to_segment(p, o2));
        };
        const int n = kThinnessSamplesPerSide;
        const double h = (s.t1 - s.t0) / (n - 1);
        int arg = 0;
        double best = -1.0;
        for (int j = 0; j < n; ++j) {
            const double v = gap(s.t0 + h * j);
            if (v > best) best = v, arg = j;
        }
        const double lo = s.t0 + h * std::max(0, arg - 1);
        const double hi = s.t0 + h * std::min(n - 1, arg + 1);
        const auto refined = detail::golden_maximize(gap, lo, hi, 40);
        worst = std::max({worst, best, refined.second});
    }
    return worst;
}

Quasicenter quasicenter(const CurvatureScale& k, const Triangle& t, std::uint64_t seed) {
    const std::array<Segment, 3> sides{side_segment(k, t[0], t[1]), side_segment(k, t[1], t[2]),
                                       side_segment(k, t[2], t[0])};
    const int dim = t.planar() ? 2 : 3;
    auto to_point = [dim](std::span<const double> v) { return Vec3{v[0], v[1], dim == 3 ? v[2] : 0.0}; };
    const detail::Objective objective = [&](std::span<const double> v) {
        const Vec3 w = to_point(v);
        if (norm(w) >= kInteriorGuard) return std::numeric_limits<double>::max();
        double m = 0.0;
        for (const auto& s : sides) m = std::max(m, distance_to_segment(w, s));
        return m;
    };

    Vec3 start = (t[0].coords() + t[1].coords() + t[2].coords()) / 3.0;
    if (norm(start) > 0.99) start = start * (0.99 / norm(start));
    Rng rng = make_rng(seed, 0);
    std::vector<double> steps(static_cast<std::size_t>(dim));
    const double scale = 0.1 * (1.0 - norm(start));
    for (auto& s : steps) s = scale;
    if (seed != 0) {
        start = start + (0.5 * scale) * random_unit(rng, dim);
        for (auto& s : steps) s *= uniform(rng, 0.5, 1.5) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
    }

    std::vector<double> x{start.x, start.y};
    if (dim == 3) x.push_back(start.z);
    double fx = objective(x);
    int used = 0;
    bool converged = false;
    while (used < kQuasicenterIterationCap) {
        const auto r = detail::nelder_mead(objective, x, steps, kQuasicenterIterationCap - used,
                                           kQuasicenterTolerance * 1e-3, 1e-12);
        used += std::max(1, r.iterations);
        const double improvement = fx - r.f;
        if (r.f <= fx) {
            x = r.x;
            fx = r.f;
        }
        if (r.converged && improvement <= kQuasicenterTolerance * 1e-3) {
            converged = true;
            break;
        }
        // Restart with a fresh simplex scaled to the room left inside the ball.
        const double room = 1.0 - norm(to_point(x));
        for (auto& s : steps) s = std::copysign(std::max(1e-7, 0.02 * room), s);
    }
    Quasicenter best{BallPoint::clamped(to_point(x)), fx, used};
    if (!converged) throw ConvergenceError("quasicenter: iteration cap reached", best);
    return best;
}

double hausdorff_distance(const CurvatureScale& k, std::span<const BallPoint> a, std::span<const BallPoint> b) {
    if (a.empty() || b.empty()) throw DomainError("hausdorff_distance: empty point set");
    auto directed = [&](std::span<const BallPoint> from, std::span<const BallPoint> to) {
        double sup = 0.0;
        for (const auto& p : from) {
            double inf = std::numeric_limits<double>::infinity();
            for (const auto& q : to) inf = std::min(inf, hyp_dist(k, p, q));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(a, b), directed(b, a));
}

double quasigeodesic_deviation(const CurvatureScale& k, std::span<const BallPoint> path, const ClosurePoint& a,
                               const ClosurePoint& b) {
    if (path.size() < 2) throw DomainError("quasigeodesic_deviation: path needs at least two points");
    const Geodesic g = geodesic_between(k, a, b);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : path) {
        const double t = projection_parameter(p, g);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!a.is_ideal()) lo = g.parameter_of(a.coords());
    if (!b.is_ideal()) hi = g.parameter_of(b.coords());
    if (lo > hi) std::swap(lo, hi);
    const Segment target{g, lo, hi};

    // The path is the piecewise geodesic through its samples. Distance to the
    // target segment is convex along each piece, so vertices realize the sup.
    double sup = 0.0;
    for (const auto& p : path) sup = std::max(sup, distance_to_segment(p.coords(), target));

    std::vector<Segment> pieces;
    pieces.reserve(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (norm(path[i].coords() - path[i + 1].coords()) == 0.0) continue;
        pieces.push_back(side_segment(k, path[i], path[i + 1]));
    }
    if (pieces.empty()) throw DomainError("quasigeodesic_deviation: path samples coincide");

    const double spacing = 0.01 / k.lambda();
    const auto count = static_cast<std::size_t>(std::clamp(std::ceil((hi - lo) / spacing) + 1.0, 2.0, 20000.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        const Vec3 q = g.point_at(t).coords();
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& piece : pieces) inf = std::min(inf, distance_to_segment(q, piece));
        sup = std::max(sup, inf);
    }
    return sup;
}

double comparison_angle(double kappa, double opposite, double side1, double side2) {
    const double s = 0.5 * (opposite + side1 + side2);
    const double num = std::sinh(kappa * (s - side1)) * std::sinh(kappa * (s - side2));
    const double den = std::sinh(kappa * s) * std::sinh(kappa * (s - opposite));
    return 2.0 * std::atan2(std::sqrt(std::max(0.0, num)), std::sqrt(std::max(0.0, den)));
}

double included_side(double kappa, double side1, double side2, double angle) {
    // cosh(k d) = cosh(k(s1 - s2)) + sinh(k s1) sinh(k s2) (1 - cos A), written
    // to stay accurate for short sides.
    const double u = std::cosh(kappa * (side1 - side2)) - 1.0 +
                     2.0 * std::sinh(kappa * side1) * std::sinh(kappa * side2) * std::pow(std::sin(0.5 * angle), 2);
    return arcosh1p(u) / kappa;
}

TriangleReport comparison_report(const CurvatureScale& k, const Triangle& t) {
    if (!t.all_interior()) throw DomainError("comparison_report: vertices must be interior");
    const BallPoint& x = t[0].interior();
    const BallPoint& y = t[1].interior();
    const BallPoint& z = t[2].interior();

    TriangleReport r;
    r.side_lengths = {hyp_dist(k, y, z), hyp_dist(k, x, z), hyp_dist(k, x, y)};
    const auto& len = r.side_lengths;
    const double scale = len[0] + len[1] + len[2];
    for (int i = 0; i < 3; ++i) {
        const double a = len[static_cast<std::size_t>(i)];
        const double rest = scale - a;
        if (!(a < rest - 1e-12 * scale))
            throw DomainError("comparison_report: side lengths violate the strict triangle inequality");
    }

    r.angles = {angle(x, y, z), angle(y, x, z), angle(z, x, y)};
    const double lam = k.lambda();
    for (int i = 0; i < 3; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const double opp = len[ui], s1 = len[(ui + 1) % 3], s2 = len[(ui + 2) % 3];
        r.comparison_angles_lambda[ui] = comparison_angle(lam, opp, s1, s2);
        r.comparison_angles_one[ui] = comparison_angle(1.0, opp, s1, s2);
    }
    r.thinness_delta = thinness(k, t);
    const Quasicenter qc = quasicenter(k, t);
    r.quasicenter = qc.center;
    r.quasicenter_c = qc.c;
    r.area_defect = kPi - (r.angles[0] + r.angles[1] + r.angles[2]);

    // Midpoints of xy and xz.
    const Geodesic gxy = geodesic_between(k, x, y);
    const Geodesic gxz = geodesic_between(k, x, z);
    const BallPoint mp = gxy.point_at(0.5 * (gxy.parameter_of(x.coords()) + gxy.parameter_of(y.coords())));
    const BallPoint mq = gxz.point_at(0.5 * (gxz.parameter_of(x.coords()) + gxz.parameter_of(z.coords())));
    r.midpoint_distance = hyp_dist(k, mp, mq);
    r.midpoint_distance_lambda = included_side(lam, 0.5 * len[2], 0.5 * len[1], r.comparison_angles_lambda[0]);
    r.midpoint_distance_one = included_side(1.0, 0.5 * len[2], 0.5 * len[1], r.comparison_angles_one[0]);
    return r;
}

double area_defect(const CurvatureScale& k, const Triangle& t) {
    if (k.lambda() != 1.0) throw DomainError("area_defect: defined for lambda = 1 only");
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (t[i].is_ideal()) continue;
        sum += angle(t[i].interior(), t[(i + 1) % 3], t[(i + 2) % 3]);
    }
    return kPi - sum;
}

}  // namespace hyperext
