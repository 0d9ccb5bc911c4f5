#pragma once

#include <cstddef>
#include <string>

#include "leray/errors.hpp"

namespace leray {

/// Uniform periodic grid on the cube [-L, L)^3 with n points per axis.
/// Points are x_i = -L + i*h, h = 2L/n; storage is row-major in (i, j, k)
/// for the (x, y, z) axes.
struct GridSpec {
    int n = 0;                ///< points per axis (even, >= 8)
    double half_width = 0.0;  ///< L > 0

    static GridSpec make(int n, double half_width) {
        if (n < 8 || n % 2 != 0)
            fail(ErrorKind::invalid_argument,
                 "grid: n must be even and >= 8, got " + std::to_string(n));
        if (!(half_width > 0.0))
            fail(ErrorKind::invalid_argument, "grid: half_width must be > 0");
        return GridSpec{n, half_width};
    }

    double h() const { return 2.0 * half_width / n; }
    std::size_t npoints() const {
        return static_cast<std::size_t>(n) * n * n;
    }
    double coord(int i) const { return -half_width + i * h(); }
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n + j) * n + k;
    }
    bool operator==(const GridSpec&) const = default;
};

}  // namespace leray
