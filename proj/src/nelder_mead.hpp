#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hyperext::detail {

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// Standard Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// Stops when the spread of objective values over the simplex drops below ftol
// and the simplex diameter below xtol, or after max_iter iterations.
SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> steps,
                          int max_iter, double ftol, double xtol);

}  // namespace hyperext::detail
