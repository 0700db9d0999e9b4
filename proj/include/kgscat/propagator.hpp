#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kgscat/dft.hpp"
#include "kgscat/fit.hpp"

namespace kgscat {

// chi0(s) = 1 for |s| <= plateau, 0 for |s| >= edge, quintic (C^2) in between.
// s is the frequency |xi|; chi1(H) at energy xi^2 is chi1(|xi|).
struct Cutoff {
    double plateau = 0.4;
    double edge = 0.8;
    double chi0(double s) const;
    double chi1(double s) const { return 1.0 - chi0(s); }
};

enum class DecayMultiplier {
    none,
    sqrt_h,        // |xi| / <xi>
    signed_xi,     // xi / <xi>
    high_pass,     // chi1(|xi|)
    japanese_gap,  // (<xi> - 1) / <xi>
};

const char* to_string(DecayMultiplier m);
DecayMultiplier decay_multiplier_from_string(const std::string& s);
Multiplier make_multiplier(DecayMultiplier m, const Cutoff& cutoff = {});

Eigen::VectorXcd evolve_linear(const DistortedBasis& b, const Eigen::VectorXcd& g, double t);
// e^{it<xi>} applied to a frequency profile, then inverted
Eigen::VectorXcd evolve_profile(const DistortedBasis& b, const Eigen::VectorXcd& gt, double t);

double weighted_norm(const SpatialGrid& grid, const Eigen::VectorXcd& g, double sigma);

// c0 e^{i pi/4} e^{it} t^{-1/2} <phi, g>
cd resonance_term_coefficient(const ScatteringData& s, const SpatialGrid& grid, const Eigen::VectorXcd& g, double t);
Eigen::VectorXcd resonance_subtracted(const DistortedBasis& b, const Eigen::VectorXcd& g, double t);

struct DecayOptions {
    DecayMultiplier multiplier = DecayMultiplier::none;
    bool subtract_resonance = false;
    Cutoff cutoff;
    double fit_lo = 10.0;
    double fit_hi = 200.0;
};

DecaySeries measure_decay(const DistortedBasis& b, const Eigen::VectorXcd& g, double sigma,
                          const std::vector<double>& times, const DecayOptions& opt = {});

// Stationary-phase prediction along the ray through (t, x). gt is the
// unfiltered transform; the high-pass chi1(H) is part of the prediction.
cd ray_asymptotics(const FrequencyGrid& fgrid, const Eigen::VectorXcd& gt, double t, double x,
                   const Cutoff& cutoff = {});

}  // namespace kgscat
