#include "kgscat/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kgscat::oracle {

namespace {
constexpr cd I(0.0, 1.0);
const double kSqrt3 = std::sqrt(3.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
}  // namespace

cd pt_m(double x, double xi, Side side) {
    const double th = std::tanh(x);
    if (side == Side::plus) return (I * xi - th) / (I * xi - 1.0);
    return (-I * xi - th) / (-I * xi + 1.0);
}

cd pt_m_dx(double x, double xi, Side side) {
    const double s2 = 1.0 / (std::cosh(x) * std::cosh(x));
    if (side == Side::plus) return -s2 / (I * xi - 1.0);
    return -s2 / (-I * xi + 1.0);
}

cd pt_jost(double x, double xi, Side side) {
    const double sgn = side == Side::plus ? 1.0 : -1.0;
    return std::polar(1.0, sgn * x * xi) * pt_m(x, xi, side);
}

cd pt_transmission(double xi) { return (I * xi - 1.0) / (I * xi + 1.0); }

cd pt_basis(double x, double xi) {
    if (xi == 0.0) throw std::domain_error("pt_basis: the basis is discontinuous at xi = 0");
    if (xi > 0.0) return kInvSqrt2Pi * pt_transmission(xi) * pt_jost(x, xi, Side::plus);
    return kInvSqrt2Pi * pt_transmission(-xi) * pt_jost(x, -xi, Side::minus);
}

double pt_ground_state(double x) { return 1.0 / (std::sqrt(2.0) * std::cosh(x)); }

double gaussian_transform(double xi) { return std::exp(-xi * xi / 4.0) / std::sqrt(2.0); }

std::pair<double, double> sine_gordon_vanishing_defect(double h, int power, double half_width) {
    if (!(h > 0.0)) throw std::invalid_argument("sine_gordon_vanishing_defect: h must be positive");
    const long n = static_cast<long>(std::llround(half_width / h));
    cd acc_p = 0.0, acc_m = 0.0;
    for (long i = -n; i <= n; ++i) {
        const double x = static_cast<double>(i) * h;
        const double w = (i == -n || i == n) ? 0.5 * h : h;
        const double f = std::pow(std::tanh(x), power) / std::cosh(x);
        acc_p += w * std::conj(pt_basis(x, kSqrt3)) * f;
        acc_m += w * std::conj(pt_basis(x, -kSqrt3)) * f;
    }
    return {std::abs(acc_p), std::abs(acc_m)};
}

cd pt_transform(const SpatialGrid& grid, const std::vector<double>& f, double xi) {
    const auto w = grid.weights();
    cd acc = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) acc += w[i] * std::conj(pt_basis(grid.x(i), xi)) * f[i];
    return acc;
}

std::vector<cd> free_evolution(const SpatialGrid& grid, const std::vector<cd>& g, double t,
                               const FrequencyGrid& fgrid) {
    if (g.size() != grid.n) throw std::invalid_argument("free_evolution: size mismatch");
    const auto w = grid.weights();
    std::vector<cd> ghat(fgrid.n, 0.0);
    for (std::size_t k = 0; k < fgrid.n; ++k) {
        const double xi = fgrid.xi(k);
        cd acc = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i) acc += w[i] * std::polar(1.0, -grid.x(i) * xi) * g[i];
        ghat[k] = kInvSqrt2Pi * acc * std::polar(1.0, t * std::sqrt(1.0 + xi * xi));
    }
    std::vector<cd> out(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) {
        cd acc = 0.0;
        for (std::size_t k = 0; k < fgrid.n; ++k) acc += std::polar(1.0, grid.x(i) * fgrid.xi(k)) * ghat[k];
        out[i] = kInvSqrt2Pi * fgrid.d() * acc;
    }
    return out;
}

cd free_evolution_gaussian(double x, double t, double xi_max, std::size_t panels) {
    if (panels % 2) ++panels;
    const double h = 2.0 * xi_max / static_cast<double>(panels);
    cd acc = 0.0;
    for (std::size_t j = 0; j <= panels; ++j) {
        const double xi = -xi_max + static_cast<double>(j) * h;
        const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 ? 4.0 : 2.0);
        acc += w * gaussian_transform(xi) * std::polar(1.0, x * xi + t * std::sqrt(1.0 + xi * xi));
    }
    return kInvSqrt2Pi * acc * h / 3.0;
}

}  // namespace kgscat::oracle
