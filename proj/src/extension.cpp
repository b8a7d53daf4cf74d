#include "hyperext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "golden.hpp"
#include "hyperext/coarse.hpp"
#include "hyperext/format.hpp"
#include "hyperext/sampling.hpp"
#include "hyperext/visual.hpp"

namespace hyperext {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Images closer than this (chordal) to an end of the target geodesic have no
// usable projection and are skipped.
constexpr double kEndpointSkip = 1e-10;

// Orthonormal pair spanning the tangent directions at x perpendicular to the
// geodesic toward q (dim == 3), or the single perpendicular (dim == 2).
struct EquatorFrame {
    Vec3 a;
    Vec3 b;
};

EquatorFrame equator_frame(const BallPoint& x, const IdealPoint& p, int dim) {
    const Vec3 d = -1.0 * direction_toward(x, p);
    const Vec3 a = orthogonal_unit(d, dim);
    return {a, cross(d, a)};
}

struct Scan {
    double t_max = -kInf;
    double t_min = kInf;
    int arg_max = -1;
};

class Projector {
  public:
    Projector(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x)
        : h_(h),
          cfg_(cfg),
          x_(x),
          p_image_(h(cfg.p)),
          q_image_(h(q_of(x, cfg.p))),
          frame_(equator_frame(x, cfg.p, cfg.dim)),
          line_(make_line(cfg.k, q_image_, p_image_)) {}

    const Geodesic& line() const { return line_; }
    const IdealPoint& q_image() const { return q_image_; }

    // Projection parameter of h(beta); NaN when h(beta) is an end of the line.
    double parameter(const Vec3& direction) const {
        const IdealPoint b = h_(ray_limit(x_, direction));
        if (norm(b.coords() - p_image_.coords()) <= kEndpointSkip ||
            norm(b.coords() - q_image_.coords()) <= kEndpointSkip)
            return std::numeric_limits<double>::quiet_NaN();
        return projection_parameter(b, line_);
    }

    Vec3 circle(double theta) const { return std::cos(theta) * frame_.a + std::sin(theta) * frame_.b; }

    Scan scan() const {
        Scan s;
        int arg_min = -1;
        const int m = cfg_.dim == 2 ? 2 : cfg_.equator_samples;
        const double step = 2.0 * kPi / m;
        for (int j = 0; j < m; ++j) {
            const Vec3 dir = cfg_.dim == 2 ? (j == 0 ? frame_.a : -1.0 * frame_.a) : circle(step * j);
            const double t = parameter(dir);
            if (std::isnan(t)) continue;
            if (s.arg_max < 0 || t > s.t_max + cfg_.tol) s.t_max = t, s.arg_max = j;
            if (arg_min < 0 || t < s.t_min - cfg_.tol) s.t_min = t, arg_min = j;
        }
        if (s.arg_max < 0) throw DomainError("extend: every equator image is an end of the target geodesic");
        if (cfg_.dim == 3 && cfg_.refine_iters > 0) {
            auto up = [&](double th) {
                const double t = parameter(circle(th));
                return std::isnan(t) ? -kInf : t;
            };
            auto down = [&](double th) {
                const double t = parameter(circle(th));
                return std::isnan(t) ? -kInf : -t;
            };
            const double c_max = step * s.arg_max, c_min = step * arg_min;
            s.t_max = std::max(s.t_max, detail::golden_maximize(up, c_max - step, c_max + step, cfg_.refine_iters).second);
            s.t_min =
                std::min(s.t_min, -detail::golden_maximize(down, c_min - step, c_min + step, cfg_.refine_iters).second);
        }
        return s;
    }

  private:
    static Geodesic make_line(const CurvatureScale& k, const IdealPoint& q_image, const IdealPoint& p_image) {
        if (norm(q_image.coords() - p_image.coords()) <= 1e-10)
            throw DomainError("extend: h(p) and h(q_x) coincide numerically");
        return geodesic_between(k, q_image, p_image);
    }

    const BoundaryMap& h_;
    const ExtensionConfig& cfg_;
    BallPoint x_;
    IdealPoint p_image_;
    IdealPoint q_image_;
    EquatorFrame frame_;
    Geodesic line_;
};

}  // namespace

void ExtensionConfig::validate() const {
    if (dim != 2 && dim != 3) throw ConfigError("extension: dim must be 2 or 3");
    if (dim == 2 && p.coords().z != 0.0) throw ConfigError("extension: p must lie in the plane when dim == 2");
    if (dim == 3 && equator_samples < 16) throw ConfigError("extension: equator_samples must be at least 16");
    if (refine_iters < 0) throw ConfigError("extension: refine_iters must be nonnegative");
    if (!(tol > 0.0)) throw ConfigError("extension: tol must be positive");
}

IdealPoint q_of(const BallPoint& x, const IdealPoint& p) { return ray_limit(x, -1.0 * direction_toward(x, p)); }

std::vector<IdealPoint> equator(const BallPoint& x, const IdealPoint& p, int dim, int m) {
    const EquatorFrame f = equator_frame(x, p, dim);
    if (dim == 2) return {ray_limit(x, f.a), ray_limit(x, -1.0 * f.a)};
    std::vector<IdealPoint> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double th = 2.0 * kPi * j / m;
        out.push_back(ray_limit(x, std::cos(th) * f.a + std::sin(th) * f.b));
    }
    return out;
}

ExtensionPoint extend_detailed(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x) {
    const Projector proj(h, cfg, x);
    const Scan s = proj.scan();
    return {proj.line().point_at(s.t_max), s.t_max, s.t_min, s.arg_max};
}

BallPoint extend(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x) {
    return extend_detailed(h, cfg, x).value;
}

ProjectionSpan projection_span(const BoundaryMap& h, const ExtensionConfig& cfg, const BallPoint& x) {
    const ExtensionPoint e = extend_detailed(h, cfg, x);
    return {e.t_min, e.t_x, std::max(0.0, e.t_x - e.t_min), e.witness};
}

double max_projection_span(const BoundaryMap& h, const ExtensionConfig& cfg, double radius, std::size_t samples,
                           std::uint64_t seed, unsigned threads) {
    std::vector<double> len(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
        Rng rng = make_rng(seed, i);
        len[i] = projection_span(h, cfg, random_ball_point(rng, cfg.dim, cfg.k, radius)).length;
    });
    return samples ? *std::max_element(len.begin(), len.end()) : 0.0;
}

BoundaryBounds boundary_bounds_check(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                     std::size_t samples, std::uint64_t seed) {
    BoundaryBounds b{kInf, -kInf, kInf, -kInf};
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, cfg.dim, cfg.k, radius);
        const IdealPoint q = q_of(x, cfg.p);
        const VisualConfig vx{x, cfg.k}, vf{extend(h, cfg, x), cfg.k};
        const IdealPoint hq = h(q);
        for (const auto& beta : equator(x, cfg.p, cfg.dim, cfg.equator_samples)) {
            const double d = visual_dist(vx, beta, q);
            const double di = visual_dist(vf, hq, h(beta));
            b.b1 = std::min(b.b1, d);
            b.b2 = std::max(b.b2, d);
            b.b3 = std::min(b.b3, di);
            b.b4 = std::max(b.b4, di);
        }
    }
    return b;
}

std::vector<ModulusRow> continuity_modulus(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                           std::span<const double> eps_grid, std::size_t centers, int directions,
                                           std::uint64_t seed, unsigned threads) {
    if (centers == 0 || directions <= 0 || eps_grid.empty()) throw DomainError("continuity_modulus: empty sample");
    const std::size_t g = eps_grid.size();
    std::vector<double> hi(centers * g, 0.0), lo(centers * g, kInf);
    parallel_for(centers, threads, [&](std::size_t i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, cfg.dim, cfg.k, radius);
        const BallPoint fx = extend(h, cfg, x);
        for (std::size_t e = 0; e < g; ++e)
            for (int j = 0; j < directions; ++j) {
                const BallPoint y = exp_map(tangent_with_length(cfg.k, x, random_unit(rng, cfg.dim), eps_grid[e]));
                const double d = hyp_dist(cfg.k, fx, extend(h, cfg, y));
                hi[i * g + e] = std::max(hi[i * g + e], d);
                lo[i * g + e] = std::min(lo[i * g + e], d);
            }
    });
    std::vector<ModulusRow> rows;
    for (std::size_t e = 0; e < g; ++e) {
        ModulusRow r{eps_grid[e], 0.0, kInf};
        for (std::size_t i = 0; i < centers; ++i) {
            r.delta = std::min(r.delta, lo[i * g + e]);
            // Pairs on every sphere of radius at most eps count toward omega(eps).
            for (std::size_t f = 0; f < g; ++f)
                if (eps_grid[f] <= eps_grid[e]) r.omega = std::max(r.omega, hi[i * g + f]);
        }
        rows.push_back(r);
    }
    return rows;
}

double compare_to_interior(const InteriorMap& f, const ExtensionConfig& cfg, double radius, std::size_t samples,
                           std::uint64_t seed, unsigned threads) {
    std::vector<double> d(samples);
    parallel_for(samples, threads, [&](std::size_t i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, cfg.dim, cfg.k, radius);
        d[i] = hyp_dist(cfg.k, extend(f.boundary_map(), cfg, x), f(x));
    });
    return samples ? *std::max_element(d.begin(), d.end()) : 0.0;
}

double basepoint_sensitivity(const BoundaryMap& h, const ExtensionConfig& cfg, const IdealPoint& p1,
                             const IdealPoint& p2, double radius, std::size_t samples, std::uint64_t seed) {
    if (same_point(p1, p2)) throw DomainError("basepoint_sensitivity: p1 and p2 must differ");
    ExtensionConfig c1 = cfg, c2 = cfg;
    c1.p = p1;
    c2.p = p2;
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, i);
        const BallPoint x = random_ball_point(rng, cfg.dim, cfg.k, radius);
        worst = std::max(worst, hyp_dist(cfg.k, extend(h, c1, x), extend(h, c2, x)));
    }
    return worst;
}

std::vector<BallPoint> ball_grid(const CurvatureScale& k, int dim, double radius, int per_axis) {
    if (per_axis < 2) throw ConfigError("ball_grid: per_axis must be at least 2");
    const double r = euclidean_radius(k, radius);
    auto coord = [&](int i) { return -r + 2.0 * r * i / (per_axis - 1); };
    std::vector<BallPoint> out;
    const int nz = dim == 3 ? per_axis : 1;
    for (int i = 0; i < per_axis; ++i)
        for (int j = 0; j < per_axis; ++j)
            for (int l = 0; l < nz; ++l) {
                const Vec3 v{coord(i), coord(j), dim == 3 ? coord(l) : 0.0};
                if (norm(v) <= r && norm(v) < kInteriorGuard) out.emplace_back(v);
            }
    return out;
}

std::vector<FieldRow> extension_field(const BoundaryMap& h, const ExtensionConfig& cfg,
                                      std::span<const BallPoint> points, unsigned threads) {
    std::vector<FieldRow> rows(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        const ExtensionPoint e = extend_detailed(h, cfg, points[i]);
        rows[i] = {points[i], e, std::max(0.0, e.t_x - e.t_min)};
    });
    return rows;
}

std::string extension_field_csv(std::span<const FieldRow> rows, int dim) {
    std::ostringstream os;
    const char* names[] = {"1", "2", "3"};
    for (int i = 0; i < dim; ++i) os << 'x' << names[i] << ',';
    for (int i = 0; i < dim; ++i) os << 'F' << names[i] << ',';
    os << "t_x,span_length\n";
    for (const auto& r : rows) {
        const double xs[] = {r.x.coords().x, r.x.coords().y, r.x.coords().z};
        const double fs[] = {r.f.value.coords().x, r.f.value.coords().y, r.f.value.coords().z};
        for (int i = 0; i < dim; ++i) os << format_number(xs[i]) << ',';
        for (int i = 0; i < dim; ++i) os << format_number(fs[i]) << ',';
        os << format_number(r.f.t_x) << ',' << format_number(r.span_length) << '\n';
    }
    return os.str();
}

}  // namespace hyperext
