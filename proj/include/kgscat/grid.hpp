#pragma once

#include <cstddef>
#include <vector>

namespace kgscat {

enum class Side { plus, minus };

// Uniform, symmetric, odd point count so that x = 0 is a node.
struct SpatialGrid {
    double L = 40.0;
    std::size_t n = 2001;

    SpatialGrid() = default;
    SpatialGrid(double half_width, std::size_t n_points);

    double h() const { return 2.0 * L / static_cast<double>(n - 1); }
    double x(std::size_t i) const { return -L + static_cast<double>(i) * h(); }
    std::size_t center() const { return n / 2; }
    std::vector<double> nodes() const;
    std::vector<double> weights() const;  // trapezoid
};

// Staggered by half a spacing: xi = 0 is never a node.
struct FrequencyGrid {
    double Xi = 12.0;
    std::size_t n = 1024;

    FrequencyGrid() = default;
    FrequencyGrid(double half_width, std::size_t n_points);

    double d() const { return 2.0 * Xi / static_cast<double>(n); }
    double xi(std::size_t k) const { return -Xi + (static_cast<double>(k) + 0.5) * d(); }
    std::size_t mirror(std::size_t k) const { return n - 1 - k; }
    std::vector<double> nodes() const;
    // 2*pi/dxi: the x-period of the discrete inversion
    double period() const;
};

}  // namespace kgscat
