#include "hyperext/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hyperext {

namespace {

void require_finite(const Vec3& v, const char* what) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
        throw DomainError(std::string(what) + ": non-finite coordinates");
}

Vec3 from_span(std::span<const double> c, const char* what) {
    if (c.size() == 2) return {c[0], c[1], 0.0};
    if (c.size() == 3) return {c[0], c[1], c[2]};
    throw DomainError(std::string(what) + ": expected 2 or 3 coordinates, got " + std::to_string(c.size()));
}

double conformal_gap(const Vec3& x) { return 1.0 - norm2(x); }

}  // namespace

CurvatureScale::CurvatureScale(double lambda) : lambda_(lambda) {
    if (!std::isfinite(lambda) || lambda < 1.0)
        throw DomainError("curvature scale lambda must be >= 1, got " + std::to_string(lambda));
}

BallPoint::BallPoint(const Vec3& coords) : c_(coords) {
    require_finite(coords, "BallPoint");
    if (norm(coords) > kInteriorGuard)
        throw DomainError("BallPoint: norm " + std::to_string(norm(coords)) + " violates the interior guard");
}

BallPoint BallPoint::clamped(const Vec3& coords) {
    require_finite(coords, "BallPoint");
    const double r = norm(coords);
    BallPoint p;
    p.c_ = r > kInteriorGuard ? coords * (kInteriorGuard / r) : coords;
    return p;
}

BallPoint BallPoint::from_coords(std::span<const double> coords) { return BallPoint(from_span(coords, "BallPoint")); }

IdealPoint::IdealPoint(const Vec3& direction) {
    require_finite(direction, "IdealPoint");
    const double r = norm(direction);
    if (std::abs(r - 1.0) > 1e-6)
        throw DomainError("IdealPoint: direction norm " + std::to_string(r) + " is not 1");
    d_ = direction / r;
}

IdealPoint IdealPoint::from_direction(const Vec3& v) {
    require_finite(v, "IdealPoint");
    const double r = norm(v);
    if (r == 0.0) throw DomainError("IdealPoint: zero direction");
    IdealPoint p;
    p.d_ = v / r;
    return p;
}

IdealPoint IdealPoint::from_coords(std::span<const double> coords) { return IdealPoint(from_span(coords, "IdealPoint")); }

const Vec3& ClosurePoint::coords() const {
    return std::visit([](const auto& p) -> const Vec3& { return p.coords(); }, v_);
}

const BallPoint& ClosurePoint::interior() const {
    if (is_ideal()) throw DomainError("expected an interior point, got an ideal point");
    return std::get<BallPoint>(v_);
}

const IdealPoint& ClosurePoint::ideal() const {
    if (!is_ideal()) throw DomainError("expected an ideal point, got an interior point");
    return std::get<IdealPoint>(v_);
}

bool same_point(const ClosurePoint& a, const ClosurePoint& b, double tol) {
    return a.is_ideal() == b.is_ideal() && norm(a.coords() - b.coords()) <= tol;
}

Vec3 mobius_add(const Vec3& a, const Vec3& x) {
    const double ax = dot(a, x);
    const double a2 = norm2(a);
    const double x2 = norm2(x);
    const double den = 1.0 + 2.0 * ax + a2 * x2;
    return ((1.0 + 2.0 * ax + x2) * a + (1.0 - a2) * x) / den;
}

double arcosh1p(double u) { return std::log1p(u + std::sqrt(u * (u + 2.0))); }

double hyp_dist(const CurvatureScale& k, const BallPoint& x, const BallPoint& y) {
    const Vec3& p = x.coords();
    const Vec3& q = y.coords();
    const double u = 2.0 * norm2(p - q) / (conformal_gap(p) * conformal_gap(q));
    return arcosh1p(u) / k.lambda();
}

// ---------------------------------------------------------------------------
// Geodesics

Geodesic geodesic_between(const CurvatureScale& k, const ClosurePoint& a, const ClosurePoint& b) {
    if (same_point(a, b)) throw DomainError("geodesic_between: coincident endpoints");
    if (!a.is_ideal() && !b.is_ideal() && norm(a.coords() - b.coords()) == 0.0)
        throw DomainError("geodesic_between: coincident endpoints");

    Vec3 start, end;
    if (a.is_ideal() && b.is_ideal()) {
        start = a.coords();
        end = b.coords();
    } else if (!a.is_ideal()) {
        const Vec3& x = a.coords();
        const Vec3 w = normalized(mobius_add(-x, b.coords()));
        start = normalized(mobius_add(x, -w));
        end = b.is_ideal() ? b.coords() : normalized(mobius_add(x, w));
    } else {
        const Vec3& y = b.coords();
        const Vec3 w = normalized(mobius_add(-y, a.coords()));
        start = a.coords();
        end = normalized(mobius_add(y, -w));
    }

    Geodesic g(a, b);
    g.lambda_ = k.lambda();
    g.start_ = IdealPoint::from_direction(start);
    g.end_ = IdealPoint::from_direction(end);
    const Vec3 sum = g.start_.coords() + g.end_.coords();
    const Vec3 diff = g.end_.coords() - g.start_.coords();
    const double chord = norm(diff);
    if (chord < 1e-15) throw DomainError("geodesic_between: endpoints coincide on the boundary");
    // The arc's midpoint sits at distance cos(phi) / (1 + sin(phi)) from the
    // origin, phi being half the angle between the endpoints.
    g.anchor_ = BallPoint::clamped(sum / (2.0 + chord));
    g.dir_ = diff / chord;
    return g;
}

BallPoint Geodesic::point_at(double t) const {
    const double r = std::tanh(0.5 * lambda_ * t);
    return BallPoint::clamped(mobius_add(anchor_.coords(), r * dir_));
}

Vec3 Geodesic::to_frame(const Vec3& q) const { return mobius_add(-anchor_.coords(), q); }

double Geodesic::parameter_of(const Vec3& on_geodesic) const {
    const double s = dot(to_frame(on_geodesic), dir_);
    return 2.0 * std::atanh(std::clamp(s, -kInteriorGuard, kInteriorGuard)) / lambda_;
}

// ---------------------------------------------------------------------------
// Tangent space

double hyperbolic_norm(const CurvatureScale& k, const TangentVector& v) {
    return 2.0 * norm(v.vec) / (k.lambda() * conformal_gap(v.base.coords()));
}

BallPoint exp_map(const TangentVector& v) {
    const double len = norm(v.vec);
    if (len == 0.0) return v.base;
    const double r = std::tanh(len / conformal_gap(v.base.coords()));
    return BallPoint::clamped(mobius_add(v.base.coords(), (r / len) * v.vec));
}

TangentVector log_map(const BallPoint& x, const BallPoint& y) {
    const Vec3 w = mobius_add(-x.coords(), y.coords());
    const double r = norm(w);
    if (r == 0.0) throw DomainError("log_map: y coincides with the base point");
    const double len = std::atanh(std::min(r, kInteriorGuard)) * conformal_gap(x.coords());
    return {x, (len / r) * w};
}

TangentVector tangent_with_length(const CurvatureScale& k, const BallPoint& x, const Vec3& direction,
                                  double length) {
    const double n = norm(direction);
    if (n == 0.0) throw DomainError("tangent_with_length: zero direction");
    const double euclid = 0.5 * length * k.lambda() * conformal_gap(x.coords());
    return {x, (euclid / n) * direction};
}

IdealPoint ray_limit(const BallPoint& x, const Vec3& v) {
    const double n = norm(v);
    if (n == 0.0) throw DomainError("ray_limit: zero direction");
    return IdealPoint::from_direction(mobius_add(x.coords(), v / n));
}

Vec3 direction_toward(const BallPoint& x, const ClosurePoint& y) {
    const Vec3 w = mobius_add(-x.coords(), y.coords());
    const double n = norm(w);
    if (n == 0.0) throw DomainError("direction_toward: target coincides with the base point");
    return w / n;
}

double angle(const BallPoint& x, const ClosurePoint& y, const ClosurePoint& z) {
    return angle_between(direction_toward(x, y), direction_toward(x, z));
}

double right_triangle_residual(const CurvatureScale& k, const BallPoint& a_vertex, const BallPoint& b_vertex,
                               const BallPoint& c_vertex) {
    const double right = angle(c_vertex, a_vertex, b_vertex);
    if (std::abs(right - std::numbers::pi / 2) > 1e-9)
        throw DomainError("right_triangle_residual: angle at C is not a right angle");
    const double a = hyp_dist(k, b_vertex, c_vertex);
    const double angle_a = angle(a_vertex, b_vertex, c_vertex);
    const double angle_b = angle(b_vertex, a_vertex, c_vertex);
    return std::cosh(k.lambda() * a) * std::sin(angle_b) - std::cos(angle_a);
}

// ---------------------------------------------------------------------------
// Isometries

MobiusIsometry::MobiusIsometry(const Vec3& origin_image, const Mat3& linear_part)
    : t_(origin_image), r_(linear_part) {
    require_finite(origin_image, "MobiusIsometry");
    if (norm(origin_image) > kInteriorGuard) throw DomainError("MobiusIsometry: origin image outside the ball");
    const Mat3 gram = linear_part.transposed() * linear_part;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)) > 1e-9)
                throw DomainError("MobiusIsometry: linear part is not orthogonal");
    orientation_preserving_ = linear_part.determinant() > 0.0;
}

MobiusIsometry MobiusIsometry::translation(const CurvatureScale& k, const Vec3& axis, double distance) {
    const double n = norm(axis);
    if (n == 0.0) throw DomainError("MobiusIsometry::translation: zero axis");
    return {std::tanh(0.5 * k.lambda() * distance) * (axis / n), Mat3::identity()};
}

Vec3 MobiusIsometry::apply(const Vec3& x) const { return mobius_add(t_, r_ * x); }

ClosurePoint MobiusIsometry::operator()(const ClosurePoint& x) const {
    if (x.is_ideal()) return (*this)(x.ideal());
    return (*this)(x.interior());
}

MobiusIsometry MobiusIsometry::inverse() const {
    // x = R^T ((-t) (+) y)  ==  (-R^T t) (+) (R^T y)
    const Mat3 rt = r_.transposed();
    return {-(rt * t_), rt};
}

MobiusIsometry compose(const MobiusIsometry& a, const MobiusIsometry& b) {
    const Vec3 t = a.apply(b.apply(Vec3{}));
    // The remaining isometry fixes the origin, hence is orthogonal; read its
    // columns off the images of the basis directions.
    auto column = [&](const Vec3& e) { return normalized(mobius_add(-t, a.apply(b.apply(e)))); };
    return {t, Mat3::from_columns(column(kE1), column(kE2), column(kE3))};
}

MobiusIsometry normalize_to_diameter(const Geodesic& g) {
    const Vec3& u = g.direction();
    Mat3 r = Mat3::identity();
    const Vec3 v = u - kE1;
    const double v2 = norm2(v);
    if (v2 > 1e-30) {
        // Householder reflection u -> e1, then flip e2 to restore orientation.
        Mat3 h;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) h(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j] / v2;
        Mat3 flip;
        flip(1, 1) = -1.0;
        r = flip * h;
    }
    return {-(r * g.anchor().coords()), r};
}

}  // namespace hyperext
