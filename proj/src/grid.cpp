#include "kgscat/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgscat {

SpatialGrid::SpatialGrid(double half_width, std::size_t n_points) : L(half_width), n(n_points) {
    if (!(L > 0.0) || !std::isfinite(L)) throw std::invalid_argument("spatial grid: half width must be positive");
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("spatial grid: need an odd point count >= 3");
}

std::vector<double> SpatialGrid::nodes() const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
    out[center()] = 0.0;
    return out;
}

std::vector<double> SpatialGrid::weights() const {
    std::vector<double> w(n, h());
    w.front() = w.back() = 0.5 * h();
    return w;
}

FrequencyGrid::FrequencyGrid(double half_width, std::size_t n_points) : Xi(half_width), n(n_points) {
    if (!(Xi > 0.0) || !std::isfinite(Xi)) throw std::invalid_argument("frequency grid: half width must be positive");
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("frequency grid: need an even point count >= 4");
}

std::vector<double> FrequencyGrid::nodes() const {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = xi(k);
    return out;
}

double FrequencyGrid::period() const { return 2.0 * std::numbers::pi / d(); }

}  // namespace kgscat
