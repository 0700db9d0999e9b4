#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "kgscat/grid.hpp"

// Closed-form references. No dependency on the spectral or dft modules.
namespace kgscat::oracle {

using cd = std::complex<double>;

// Poeschl-Teller V = -2 sech^2 x
cd pt_jost(double x, double xi, Side side);  // f+-
cd pt_m(double x, double xi, Side side);     // m+- = e^{-+ix xi} f+-
cd pt_m_dx(double x, double xi, Side side);
cd pt_transmission(double xi);
cd pt_basis(double x, double xi);  // throws at xi = 0
double pt_ground_state(double x);  // 2^{-1/2} sech x
inline constexpr double pt_ground_energy = -1.0;

// plain Fourier transform of exp(-x^2) with the (2 pi)^{-1/2} e^{-ix xi} convention
double gaussian_transform(double xi);

// |int conj(e(x, +-sqrt3)) sech(x) tanh^p(x) dx| by the trapezoid rule on
// |x| <= half_width with spacing h; p = 3 vanishes exactly
std::pair<double, double> sine_gordon_vanishing_defect(double h = 0.005, int power = 3, double half_width = 60.0);

// int conj(pt_basis(x, xi)) f(x) dx for f sampled on a uniform grid (trapezoid)
cd pt_transform(const SpatialGrid& grid, const std::vector<double>& f, double xi);

// e^{it sqrt(1 - d_x^2)} g through the standard Fourier transform, evaluated
// by direct quadrature sums on the given grids
std::vector<cd> free_evolution(const SpatialGrid& grid, const std::vector<cd>& g, double t,
                               const FrequencyGrid& fgrid);

// same for g = exp(-x^2) with the exact transform and a fine Simpson rule in xi
cd free_evolution_gaussian(double x, double t, double xi_max = 14.0, std::size_t panels = 40000);

}  // namespace kgscat::oracle
