#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace notchwall {

/// Uniform 1D grid on [-L, L] with an odd node count so that x = 0 is a node.
struct Grid {
    double L = 0.0;
    std::size_t n = 0;
    double h = 0.0;

    Grid() = default;
    Grid(double half_length, std::size_t node_count)
        : L(half_length), n(node_count), h(2.0 * half_length / double(node_count - 1)) {
        if (node_count < 3 || node_count % 2 == 0)
            throw std::invalid_argument("Grid: node count must be odd and >= 3");
        if (!(half_length > 0.0))
            throw std::invalid_argument("Grid: half length must be positive");
    }

    std::size_t center_index() const { return (n - 1) / 2; }

    /// Node coordinates are exactly antisymmetric about the center node.
    double node(std::size_t i) const {
        const std::size_t c = center_index();
        if (i == c) return 0.0;
        if (i > c) return double(i - c) * h;
        return -double(c - i) * h;
    }

    /// Trapezoid quadrature weight of node i.
    double weight(std::size_t i) const { return (i == 0 || i == n - 1) ? 0.5 * h : h; }

    std::vector<double> nodes() const {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = node(i);
        return x;
    }

    bool operator==(const Grid& o) const { return L == o.L && n == o.n; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace notchwall
