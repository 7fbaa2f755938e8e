#pragma once

#include <algorithm>
#include <vector>

#include "logtower/errors.hpp"

namespace logtower {

// Fornberg weights: w[j] such that sum_j w[j] f(x[j]) approximates the
// order-th derivative of f at x0, for arbitrarily spaced nodes.
inline std::vector<double> fd_weights(const std::vector<double>& x, double x0,
                                      unsigned order) {
    const std::size_t n = x.size();
    if (n <= order) throw Error("fd_weights: need more nodes than the order");
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0, c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const unsigned mn = std::min<std::size_t>(i, order);
        double c2 = 1.0, c5 = c4;
        c4 = x[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (unsigned k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (unsigned k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

// Pointwise derivative of sampled data by sliding stencils, centered where
// the grid allows and one-sided at the ends.
inline std::vector<double> fd_derivative(const std::vector<double>& t,
                                         const std::vector<double>& y,
                                         unsigned order, unsigned width = 5) {
    const std::size_t n = t.size();
    if (y.size() != n) throw Error("fd_derivative: length mismatch");
    if (n < width) throw Error("fd_derivative: grid shorter than the stencil");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i >= width / 2 ? i - width / 2 : 0;
        lo = std::min(lo, n - width);
        std::vector<double> nodes(t.begin() + lo, t.begin() + lo + width);
        const auto w = fd_weights(nodes, t[i], order);
        double s = 0.0;
        for (std::size_t j = 0; j < width; ++j) s += w[j] * y[lo + j];
        out[i] = s;
    }
    return out;
}

}  // namespace logtower
