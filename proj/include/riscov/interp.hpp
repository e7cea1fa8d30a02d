#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace riscov {

// Piecewise-linear interpolant over sorted knots, clamped at both ends.
// Linear interpolation preserves monotonicity, which the cached CDFs rely on.
struct PiecewiseLinear {
    std::vector<double> x;
    std::vector<double> y;

    bool empty() const { return x.empty(); }

    double operator()(double q) const {
        if (x.empty()) return 0.0;
        if (q <= x.front()) return y.front();
        if (q >= x.back()) return y.back();
        const std::size_t hi = static_cast<std::size_t>(
            std::upper_bound(x.begin(), x.end(), q) - x.begin());
        const std::size_t lo = hi - 1;
        const double t = (q - x[lo]) / (x[hi] - x[lo]);
        return y[lo] + t * (y[hi] - y[lo]);
    }
};

} // namespace riscov
