#include "hyperext/sampling.hpp"

#include <cmath>
#include <numbers>

namespace hyperext {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double uniform(Rng& rng, double lo, double hi) {
    // 53-bit mantissa draw; avoids implementation-specific distribution objects.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Vec3 random_unit(Rng& rng, int dim) {
    if (dim == 2) {
        const double th = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        return {std::cos(th), std::sin(th), 0.0};
    }
    const double z = uniform(rng, -1.0, 1.0);
    const double th = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(th), r * std::sin(th), z};
}

IdealPoint random_ideal(Rng& rng, int dim) { return IdealPoint::from_direction(random_unit(rng, dim)); }

BallPoint random_ball_point(Rng& rng, int dim, const CurvatureScale& k, double radius) {
    const double r = uniform(rng, 0.0, radius);
    return BallPoint::clamped(euclidean_radius(k, r) * random_unit(rng, dim));
}

Vec3 orthogonal_unit(const Vec3& v, int dim) {
    if (dim == 2) return {-v.y, v.x, 0.0};
    const Vec3 helper = std::abs(v.x) < 0.6 ? kE1 : (std::abs(v.y) < 0.6 ? kE2 : kE3);
    return normalized(cross(v, helper));
}

}  // namespace hyperext
