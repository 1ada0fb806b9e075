#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace timo {

/// Composite Simpson weights for a uniform grid of n nodes with the given
/// spacing. When the interval count is odd the last three intervals use the
/// 3/8 rule; n == 2 degenerates to the trapezoid rule.
inline std::vector<double> simpson_weights(std::size_t n, double spacing) {
    if (n < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");
    std::vector<double> w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = spacing / 2.0;
        return w;
    }
    std::size_t intervals = n - 1;
    std::size_t simpson_end = n;  // one past the last node of the 1/3 section
    if (intervals % 2 != 0) {
        simpson_end = n - 3;
        intervals = n - 4;
    }
    const double h3 = spacing / 3.0;
    if (intervals > 0) {
        w[0] += h3;
        for (std::size_t i = 1; i + 1 < simpson_end; i += 2) w[i] += 4.0 * h3;
        for (std::size_t i = 2; i + 1 < simpson_end; i += 2) w[i] += 2.0 * h3;
        w[simpson_end - 1] += h3;
    }
    if (simpson_end != n) {
        const double h8 = 3.0 * spacing / 8.0;
        w[n - 4] += h8;
        w[n - 3] += 3.0 * h8;
        w[n - 2] += 3.0 * h8;
        w[n - 1] += h8;
    }
    return w;
}

/// Cumulative trapezoid integral of uniformly spaced samples; result[0] = 0.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& values,
                                                double spacing) {
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * spacing * (values[i - 1] + values[i]);
    }
    return out;
}

inline double weighted_sum(const std::vector<double>& values,
                           const std::vector<double>& weights) {
    if (values.size() != weights.size()) {
        throw std::invalid_argument("weighted_sum: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * weights[i];
    return acc;
}

}  // namespace timo
