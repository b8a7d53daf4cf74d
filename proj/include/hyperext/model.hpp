#pragma once

// Poincare ball model of constant curvature -lambda^2.
//
// Points are stored as vectors in R^3; the planar model is the z = 0 slice.
// The metric is ds = 2|dx| / (lambda (1 - |x|^2)), so every length below is the
// lambda = 1 length divided by lambda while angles are those of R^3.

#include <span>
#include <variant>

#include "hyperext/errors.hpp"
#include "hyperext/vec.hpp"

namespace hyperext {

// Largest admissible Euclidean norm of an interior point.
inline constexpr double kInteriorGuard = 1.0 - 1e-12;

class CurvatureScale {
  public:
    CurvatureScale() = default;
    explicit CurvatureScale(double lambda);

    double lambda() const { return lambda_; }

  private:
    double lambda_ = 1.0;
};

class BallPoint {
  public:
    BallPoint() = default;
    explicit BallPoint(const Vec3& coords);
    BallPoint(double x, double y, double z = 0.0) : BallPoint(Vec3{x, y, z}) {}

    // Pulls points at or beyond the guard radius back onto it.
    static BallPoint clamped(const Vec3& coords);
    // Accepts 2 or 3 coordinates.
    static BallPoint from_coords(std::span<const double> coords);

    const Vec3& coords() const { return c_; }

    friend bool operator==(const BallPoint&, const BallPoint&) = default;

  private:
    Vec3 c_{};
};

class IdealPoint {
  public:
    IdealPoint() = default;
    // Requires |direction| within 1e-6 of 1; the stored vector is renormalized.
    explicit IdealPoint(const Vec3& direction);
    IdealPoint(double x, double y, double z = 0.0) : IdealPoint(Vec3{x, y, z}) {}

    // Any nonzero vector; normalized.
    static IdealPoint from_direction(const Vec3& v);
    static IdealPoint from_coords(std::span<const double> coords);

    const Vec3& coords() const { return d_; }

    friend bool operator==(const IdealPoint&, const IdealPoint&) = default;

  private:
    Vec3 d_{1.0, 0.0, 0.0};
};

// A point of the closed ball.
class ClosurePoint {
  public:
    ClosurePoint(const BallPoint& p) : v_(p) {}    // NOLINT(google-explicit-constructor)
    ClosurePoint(const IdealPoint& p) : v_(p) {}   // NOLINT(google-explicit-constructor)

    bool is_ideal() const { return std::holds_alternative<IdealPoint>(v_); }
    const Vec3& coords() const;

    const BallPoint& interior() const;
    const IdealPoint& ideal() const;

  private:
    std::variant<BallPoint, IdealPoint> v_;
};

bool same_point(const ClosurePoint& a, const ClosurePoint& b, double tol = 1e-12);

// Mobius addition a (+) x: the isometry translating 0 to a, evaluated at x.
// Valid for |a| < 1 and |x| <= 1; maps the unit sphere to itself.
Vec3 mobius_add(const Vec3& a, const Vec3& x);

// arcosh(1 + u) without cancellation for small u.
double arcosh1p(double u);

double hyp_dist(const CurvatureScale& k, const BallPoint& x, const BallPoint& y);

// Complete geodesic through two closure points, oriented from a toward b and
// parametrized by lambda-arclength with t = 0 at the anchor.
class Geodesic {
  public:
    const ClosurePoint& a() const { return a_; }
    const ClosurePoint& b() const { return b_; }
    const BallPoint& anchor() const { return anchor_; }
    // Euclidean unit tangent at the anchor, pointing toward end().
    const Vec3& direction() const { return dir_; }
    double lambda() const { return lambda_; }

    const IdealPoint& start() const { return start_; }  // t -> -inf
    const IdealPoint& end() const { return end_; }      // t -> +inf

    BallPoint point_at(double t) const;

    // Moves q into the frame where this geodesic is the diameter along
    // direction(), with the anchor at the origin.
    Vec3 to_frame(const Vec3& q) const;

    // Parameter of a point lying on the geodesic.
    double parameter_of(const Vec3& on_geodesic) const;

  private:
    friend Geodesic geodesic_between(const CurvatureScale&, const ClosurePoint&, const ClosurePoint&);

    Geodesic(const ClosurePoint& a, const ClosurePoint& b) : a_(a), b_(b) {}

    ClosurePoint a_;
    ClosurePoint b_;
    BallPoint anchor_{};
    Vec3 dir_{1.0, 0.0, 0.0};
    IdealPoint start_{};
    IdealPoint end_{};
    double lambda_ = 1.0;
};

Geodesic geodesic_between(const CurvatureScale& k, const ClosurePoint& a, const ClosurePoint& b);

inline BallPoint point_at(const Geodesic& g, double t) { return g.point_at(t); }

// Tangent vector in Euclidean coordinates of the ball chart.
struct TangentVector {
    BallPoint base;
    Vec3 vec;
};

double hyperbolic_norm(const CurvatureScale& k, const TangentVector& v);

BallPoint exp_map(const TangentVector& v);
TangentVector log_map(const BallPoint& x, const BallPoint& y);

// Tangent vector at x with the given direction and lambda-length.
TangentVector tangent_with_length(const CurvatureScale& k, const BallPoint& x, const Vec3& direction,
                                  double length);

// Ideal endpoint of the ray from x with initial direction v.
IdealPoint ray_limit(const BallPoint& x, const Vec3& v);

// Euclidean unit vector at x pointing along the geodesic toward y.
Vec3 direction_toward(const BallPoint& x, const ClosurePoint& y);

// Riemannian angle at x between the geodesics toward y and z, in [0, pi].
double angle(const BallPoint& x, const ClosurePoint& y, const ClosurePoint& z);

// cosh(lambda a) sin(B) - cos(A) for a triangle with right angle at c, where a is
// the side opposite a_vertex and B the angle at b_vertex.
double right_triangle_residual(const CurvatureScale& k, const BallPoint& a_vertex, const BallPoint& b_vertex,
                               const BallPoint& c_vertex);

// Isometry x -> t (+) (R x) with R orthogonal.
class MobiusIsometry {
  public:
    MobiusIsometry() = default;
    MobiusIsometry(const Vec3& origin_image, const Mat3& linear_part);

    static MobiusIsometry translation(const CurvatureScale& k, const Vec3& axis, double distance);
    static MobiusIsometry rotation(const Mat3& r) { return {Vec3{}, r}; }

    Vec3 apply(const Vec3& x) const;
    BallPoint operator()(const BallPoint& x) const { return BallPoint::clamped(apply(x.coords())); }
    IdealPoint operator()(const IdealPoint& x) const { return IdealPoint::from_direction(apply(x.coords())); }
    ClosurePoint operator()(const ClosurePoint& x) const;

    MobiusIsometry inverse() const;

    const Vec3& origin_image() const { return t_; }
    const Mat3& linear_part() const { return r_; }
    bool orientation_preserving() const { return orientation_preserving_; }

  private:
    Vec3 t_{};
    Mat3 r_{};
    bool orientation_preserving_ = true;
};

// a o b
MobiusIsometry compose(const MobiusIsometry& a, const MobiusIsometry& b);

inline ClosurePoint apply_mobius(const MobiusIsometry& m, const ClosurePoint& p) { return m(p); }

// Isometry carrying g onto the diameter (-e1, e1), anchor to the origin and
// g's orientation to +e1. Orientation preserving; fixes the planar slice when
// g lies in it.
MobiusIsometry normalize_to_diameter(const Geodesic& g);

}  // namespace hyperext
