#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgscat/dft.hpp"
#include "kgscat/fit.hpp"

namespace kgscat {

struct NlkgOptions {
    double t_max = 200.0;
    double dt = 0.1;
    double profile_stride = 1.0;  // g~ snapshots every this much time
    double guard_factor = 10.0;   // abort when ||g~|| exceeds this multiple of its initial value
    double diag_radius = 25.0;    // rows |x| <= radius are stored for weighted diagnostics
    double alpha_cut = 1e-18;     // rows with |alpha| below this fraction of max are not transformed
};

struct Trajectory {
    SpatialGrid grid;
    FrequencyGrid fgrid;
    double dt = 0.0;
    std::size_t row_lo = 0, row_hi = 0;  // stored/transformed rows [row_lo, row_hi)
    std::vector<double> times;           // every step, starting at 0
    std::vector<Eigen::VectorXcd> v;     // v(t) on the stored rows
    std::vector<cd> phi_alpha_u2;        // <phi, alpha u^2>, empty for generic data
    std::vector<double> profile_norm;    // ||g~(t)||
    std::vector<double> profile_times;
    std::vector<Eigen::VectorXcd> profiles;
    Eigen::VectorXcd v0;  // P_c v0 on the full grid
    cd phi_v0 = 0.0;      // <phi, P_c v0>
    std::vector<double> alpha;

    double x(std::size_t row) const { return grid.x(row_lo + row); }
    std::size_t rows() const { return row_hi - row_lo; }
    std::size_t step_index(double t) const;     // nearest stored step; throws when out of range
    std::size_t profile_index(double t) const;  // exact snapshot; throws otherwise
};

// Exponential-integrator RK4 for the profile g~ = e^{-it<xi>} v~.
Trajectory integrate(const DistortedBasis& b, const std::vector<double>& alpha, const Eigen::VectorXcd& v0,
                     const NlkgOptions& opt);

// v(t) on the full grid from a profile
Eigen::VectorXcd field_from_profile(const DistortedBasis& b, const Eigen::VectorXcd& gt, double t);

cd coefficient_a(const Trajectory& traj, const ScatteringData& s, double t);

struct A0Estimate {
    cd direct = 0.0;
    cd crosscheck = 0.0;
    double tail = 0.0;           // estimated truncation error of the improper integrals
    double crosscheck_spread = 0.0;  // late-window std / |mean|
    double truncation = 0.0;     // upper limit used for the integrals
    bool converged = true;       // tail <= 0.2 |direct|
};

A0Estimate extract_a0(const Trajectory& traj, const ScatteringData& s);

struct ResonanceValues {
    cd plus = 0.0;   // at +sqrt3
    cd minus = 0.0;  // at -sqrt3
    double peak = 0.0;
    bool resonant(double threshold) const;
};

inline constexpr double kResonanceThreshold = 1e-2;

ResonanceValues resonance_values(const DistortedBasis& b, const std::vector<double>& alpha);

// |c0^2 a0^2 / sqrt8 * F[alpha phi^2](-+sqrt3)| for the ray x = +-(sqrt3/2) t
double predicted_amplitude(double c0, cd a0, cd resonance_value);

// v_mod on arbitrary points. The time integral I(t, xi) is carried forward
// incrementally, so times must be requested in increasing order.
class VModStream {
public:
    VModStream(const DistortedBasis& b, const std::vector<double>& Y, cd a0);

    Eigen::VectorXcd frequency(double t);  // v_mod~(t, .)
    Eigen::VectorXcd evaluate(double t, const std::vector<double>& xs);
    double time() const { return t_; }
    const Eigen::VectorXcd& integral() const { return I_; }

private:
    void advance(double t);
    const DistortedBasis& b_;
    Eigen::VectorXcd Yt_;
    cd prefactor_;
    double t_ = 1.0;
    Eigen::VectorXcd I_;
};

cd v_mod_eval_point(const DistortedBasis& b, const std::vector<double>& Y, cd a0, double t, double x);
Eigen::VectorXcd v_mod_eval(const DistortedBasis& b, const std::vector<double>& Y, cd a0, double t,
                            const std::vector<double>& xs);

// |v(t, lambda t)| with the loglinear fit; extent is the largest |x| allowed
DecaySeries ray_series(const DistortedBasis& b, const Trajectory& traj, double lambda, const std::vector<double>& times,
                       double extent, double fit_lo, double fit_hi);
DecaySeries ray_series(const DistortedBasis& b, VModStream& stream, double lambda, const std::vector<double>& times,
                       double extent, double fit_lo, double fit_hi);

struct WDiagnostics {
    DecaySeries v;
    DecaySeries v_minus_w;
};

WDiagnostics w_diagnostics(const Trajectory& traj, const ScatteringData& s, double sigma,
                           const std::vector<double>& times, double fit_lo, double fit_hi);

// ||<x>^{-sigma} d/dt (e^{-it} v)|| by centered differences
DecaySeries phase_filtered_series(const Trajectory& traj, double sigma, const std::vector<double>& times, double fit_lo,
                                  double fit_hi);

// Late-time growth of the profile at xi0: fit g~(t, xi0) = c + K log t on [fit_lo, fit_hi]
cd profile_log_growth(const Trajectory& traj, double xi0, double fit_lo, double fit_hi);

struct RayResult {
    double lambda = 0.0;
    double A_pred = 0.0;  // zero off the special rays
    DecaySeries vmod;     // |v_mod(t, lambda t)|
    DecaySeries traj;     // |v(t, lambda t)| from the trajectory
};

struct AnalysisOptions {
    double sigma = 5.0;
    double fit_lo = 10.0;
    double fit_hi = 200.0;
    double extent = 200.0;
    double ray_t_min = 10.0;
    std::size_t n_times = 40;
    double resonance_threshold = kResonanceThreshold;
};

struct ModScatteringReport {
    ResonanceValues resonance;
    bool resonant = false;
    bool degenerate = false;  // alpha == 0 or a0 == 0: nothing to modify
    double c0 = 0.0;
    A0Estimate a0;
    double A_pred_plus = 0.0;   // ray x = +(sqrt3/2) t, uses F(-sqrt3)
    double A_pred_minus = 0.0;  // ray x = -(sqrt3/2) t, uses F(+sqrt3)
    std::vector<RayResult> rays;
    WDiagnostics w;
    DecaySeries phase_filtered;
    // profile growth g~(t, xi) ~ K log t at xi = +-sqrt3 and the v_mod rate c0^2 a0^2 Y~ / 4
    cd K_plus = 0.0, K_minus = 0.0, K_pred_plus = 0.0, K_pred_minus = 0.0;
};

ModScatteringReport analyze(const DistortedBasis& b, const Trajectory& traj, const AnalysisOptions& opt);

// distinct integers, geometric between a and b
std::vector<double> integer_times(double a, double b, std::size_t n);

}  // namespace kgscat
