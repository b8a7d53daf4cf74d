#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

namespace hyperext::detail {

// Golden-section search for a maximum of f on [lo, hi]. Returns (argmax, max)
// over the evaluated points.
template <class F>
std::pair<double, double> golden_maximize(F&& f, double lo, double hi, int iterations) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    double best_x = fc >= fd ? c : d, best_f = std::max(fc, fd);
    for (int i = 0; i < iterations; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            if (fc > best_f) best_f = fc, best_x = c;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            if (fd > best_f) best_f = fd, best_x = d;
        }
    }
    return {best_x, best_f};
}

}  // namespace hyperext::detail
