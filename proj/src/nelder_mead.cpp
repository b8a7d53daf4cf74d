#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperext::detail {

SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::span<const double> steps,
                          int max_iter, double ftol, double xtol) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> pts(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += steps[i];
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    auto blend = [&](const std::vector<double>& base, const std::vector<double>& toward, double c,
                     std::vector<double>& out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = base[j] + c * (toward[j] - base[j]);
    };

    SimplexResult res;
    int it = 0;
    for (; it < max_iter; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double diam = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j) diam = std::max(diam, std::abs(pts[i][j] - pts[best][j]));
        if (vals[worst] - vals[best] <= ftol && diam <= xtol) {
            res.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);

        blend(centroid, pts[worst], -1.0, trial);
        const double fr = f(trial);
        if (fr < vals[best]) {
            blend(centroid, pts[worst], -2.0, trial2);
            const double fe = f(trial2);
            if (fe < fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second]) {
            pts[worst] = trial;
            vals[worst] = fr;
            continue;
        }
        // Contraction toward the better of the worst point and its reflection.
        const bool outside = fr < vals[worst];
        blend(centroid, outside ? trial : pts[worst], 0.5, trial2);
        const double fc = f(trial2);
        if (fc < std::min(fr, vals[worst])) {
            pts[worst] = trial2;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            blend(pts[best], pts[i], 0.5, pts[i]);
            vals[i] = f(pts[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    res.x = pts[best];
    res.f = vals[best];
    res.iterations = it;
    return res;
}

}  // namespace hyperext::detail
