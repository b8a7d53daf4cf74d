#pragma once

// Seeded random sampling and a deterministic data-parallel loop.
//
// Every sample index draws from its own stream derived from (seed, index), so
// results do not depend on the thread count or scheduling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "hyperext/model.hpp"

namespace hyperext {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Independent generator for sample `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

double uniform(Rng& rng, double lo, double hi);

// Uniform direction on the unit sphere of R^dim (dim 2 or 3).
Vec3 random_unit(Rng& rng, int dim);

IdealPoint random_ideal(Rng& rng, int dim);

// Interior point with lambda-distance to the origin uniform in [0, radius].
BallPoint random_ball_point(Rng& rng, int dim, const CurvatureScale& k, double radius);

// Euclidean radius of the lambda-ball of the given hyperbolic radius.
inline double euclidean_radius(const CurvatureScale& k, double radius) {
    return std::tanh(0.5 * k.lambda() * radius);
}

// Unit vector orthogonal to v (|v| = 1) staying in the planar slice when dim == 2.
Vec3 orthogonal_unit(const Vec3& v, int dim);

// Runs fn(i) for i in [0, count). threads == 0 uses the hardware concurrency.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace hyperext
