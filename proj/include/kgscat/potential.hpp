#pragma once

#include <string>
#include <vector>

#include "kgscat/grid.hpp"

namespace kgscat {

enum class ProfileKind { free, poeschl_teller, gaussian_well, sech_squared, sech_tanh, sampled };

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

// A real profile on the line: used both for the potential V and for the
// coefficient alpha. Closed-form kinds are
//   poeschl_teller   -2 sech^2(x)
//   gaussian_well    a exp(-(x/w)^2)
//   sech_squared     a sech^2(x/w)
//   sech_tanh        a sech(x/w) tanh(x/w)
// Sampled profiles interpolate with local cubics and vanish outside the samples.
class Profile {
public:
    static Profile free();
    static Profile poeschl_teller();
    static Profile gaussian_well(double amplitude, double width);
    static Profile sech_squared(double amplitude, double width);
    static Profile sech_tanh(double amplitude, double width);
    static Profile sampled(const SpatialGrid& grid, std::vector<double> values);

    ProfileKind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double width() const { return width_; }
    int derivative_order_available() const { return kind_ == ProfileKind::sampled ? 2 : 3; }
    bool is_zero() const;

    double operator()(double x, int deriv = 0) const;
    std::vector<double> eval(const SpatialGrid& grid, int deriv = 0) const;

private:
    Profile(ProfileKind kind, double amplitude, double width) : kind_(kind), amplitude_(amplitude), width_(width) {}
    double sampled_value(double x, int deriv) const;

    ProfileKind kind_ = ProfileKind::free;
    double amplitude_ = 0.0;
    double width_ = 1.0;
    SpatialGrid sample_grid_;
    std::vector<double> samples_[3];  // value, first and second difference derivatives
};

using PotentialSpec = Profile;
using CoefficientSpec = Profile;

double moment_norm(const Profile& spec, int N, int deriv, const SpatialGrid& grid);
int bound_state_count_bound(const Profile& spec, const SpatialGrid& grid);

// Four-point Lagrange interpolation on uniform samples starting at x0.
// Points beyond the ends use the nearest interior stencil.
double lagrange_cubic(const std::vector<double>& y, double x0, double h, double x);

}  // namespace kgscat
