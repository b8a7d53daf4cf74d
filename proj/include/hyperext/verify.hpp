#pragma once

// Property checks with thresholds, shared by the verify command and the
// acceptance binary.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperext/config.hpp"
#include "hyperext/extension.hpp"
#include "hyperext/maps.hpp"
#include "json.hpp"

namespace hyperext {

enum class Relation { Less, LessEqual, Greater, GreaterEqual };

struct CheckResult {
    std::string id;
    std::string statistic;  // what `measured` is
    std::size_t samples = 0;
    double measured = 0.0;
    Relation relation = Relation::LessEqual;
    double threshold = 0.0;
    bool pass = false;
    double wall_seconds = 0.0;
};

// Fills pass from measured, relation and threshold.
CheckResult make_check(std::string id, std::string statistic, std::size_t samples, double measured, Relation relation,
                       double threshold);

const char* relation_symbol(Relation r);

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool low_power = false;

    bool all_passed() const;
    std::vector<std::string> failing_ids() const;
    nlohmann::json to_json(bool with_timing) const;
};

// |cosh(lambda a) sin B - cos A| over random right triangles, cycling over lambdas and dims 2, 3.
CheckResult check_right_triangle_identity(std::span<const double> lambdas, std::size_t count, std::uint64_t seed);

// Largest thinness over random interior, mixed and truncated ideal triangles.
CheckResult check_thinness(std::span<const double> lambdas, int dim, std::size_t count, std::uint64_t seed,
                           unsigned threads);

// Distance from x to yz and Hausdorff distance of yz to xy u xz, angle at x at least pi/2.
std::vector<CheckResult> check_obtuse_bound(const CurvatureScale& k, int dim, std::size_t count, std::uint64_t seed,
                                            unsigned threads);
CheckResult check_symmetric_obtuse();

// Grids of per_axis points per axis over the ball of the given radius.
CheckResult check_identity_law(const ExtensionConfig& cfg, double radius, int per_axis);
CheckResult check_isometry_law(const ExtensionConfig& cfg, const MobiusIsometry& g, double radius, int per_axis);

// |d_x(beta, q_x) - (sqrt 2 - 1)^(1/lambda)| over sampled x and beta in E_x.
CheckResult check_equator_constant(const ExtensionConfig& cfg, double radius, std::size_t samples,
                                   std::uint64_t seed);

// |B(r_large) - B(r_small)| / max(B(r_small), B(r_large), 5e-6) for the largest
// projection span B(r) over the ball of radius r. The floor keeps rounding noise
// of maps with zero span from counting as instability.
CheckResult check_span_stability(const BoundaryMap& h, const ExtensionConfig& cfg, double r_small, double r_large,
                                 std::size_t samples, std::uint64_t seed, unsigned threads);

// Forward modulus at the smallest grid value below 1e-2, and the smallest gap positive.
std::vector<CheckResult> check_continuity(const BoundaryMap& h, const ExtensionConfig& cfg, double radius,
                                          std::span<const double> eps_grid, std::size_t centers, int directions,
                                          std::uint64_t seed, unsigned threads);

// Relative change of sup d(F, f) between the two radii, below 10%.
CheckResult check_interior_stability(const InteriorMap& f, const ExtensionConfig& cfg, double r_small, double r_large,
                                     std::size_t samples, std::uint64_t seed, unsigned threads);

// sup d(F, f) for a jittered isometry stays within its amplitude.
CheckResult check_jitter_distance(const ExtensionConfig& cfg, double amplitude, double radius, std::size_t samples,
                                  std::uint64_t seed, unsigned threads);

// Envelope exponent of the quasisymmetry cloud at least 1/L - 0.1.
CheckResult check_qs_exponent(const BoundaryMap& h, const CurvatureScale& k, int dim, std::size_t triples,
                              std::uint64_t seed);

// First-fit colorings of random graphs with valence at most 16, and of every
// graph on at most max_vertices vertices: measured is the number of graphs
// with an improper coloring or more than maxdeg + 1 colors.
CheckResult check_coloring_random(std::size_t graphs, std::uint64_t seed);
CheckResult check_coloring_exhaustive(int max_vertices);

// Identity, mobius, angle_warp, latitude_warp and composite, with fixed parameters.
std::vector<BoundaryMap> builtin_boundary_maps(const CurvatureScale& k, int dim);
MobiusIsometry builtin_isometry(const CurvatureScale& k, int dim);

// The suite at the configured counts.
VerificationReport run_verification(const RunConfig& cfg);

}  // namespace hyperext
