#include "kgscat/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgscat/errors.hpp"

namespace kgscat {

double Cutoff::chi0(double s) const {
    const double a = std::abs(s);
    if (a <= plateau) return 1.0;
    if (a >= edge) return 0.0;
    const double u = (a - plateau) / (edge - plateau);
    return 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
}

const char* to_string(DecayMultiplier m) {
    switch (m) {
        case DecayMultiplier::none: return "none";
        case DecayMultiplier::sqrt_h: return "sqrt_h";
        case DecayMultiplier::signed_xi: return "signed_xi";
        case DecayMultiplier::high_pass: return "high_pass";
        case DecayMultiplier::japanese_gap: return "japanese_gap";
    }
    return "?";
}

DecayMultiplier decay_multiplier_from_string(const std::string& s) {
    for (auto m : {DecayMultiplier::none, DecayMultiplier::sqrt_h, DecayMultiplier::signed_xi,
                   DecayMultiplier::high_pass, DecayMultiplier::japanese_gap})
        if (s == to_string(m)) return m;
    throw std::invalid_argument("unknown multiplier '" + s + "'");
}

Multiplier make_multiplier(DecayMultiplier m, const Cutoff& cutoff) {
    switch (m) {
        case DecayMultiplier::none: return multipliers::one();
        case DecayMultiplier::sqrt_h: return [](double xi) { return cd(std::abs(xi) / japanese(xi)); };
        case DecayMultiplier::signed_xi: return [](double xi) { return cd(xi / japanese(xi)); };
        case DecayMultiplier::high_pass: return [cutoff](double xi) { return cd(cutoff.chi1(xi)); };
        case DecayMultiplier::japanese_gap: return [](double xi) { return cd((japanese(xi) - 1.0) / japanese(xi)); };
    }
    return multipliers::one();
}

Eigen::VectorXcd evolve_profile(const DistortedBasis& b, const Eigen::VectorXcd& gt, double t) {
    return b.inverse(apply_multiplier(b, gt, multipliers::half_wave(t)));
}

Eigen::VectorXcd evolve_linear(const DistortedBasis& b, const Eigen::VectorXcd& g, double t) {
    return evolve_profile(b, b.forward(g), t);
}

double weighted_norm(const SpatialGrid& grid, const Eigen::VectorXcd& g, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("weighted_norm: sigma must be >= 0");
    if (g.size() != static_cast<Eigen::Index>(grid.n)) throw std::invalid_argument("weighted_norm: size mismatch");
    const auto w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        acc += w[i] * std::norm(g[static_cast<Eigen::Index>(i)]) * std::pow(1.0 + x * x, -sigma);
    }
    return std::sqrt(acc);
}

cd resonance_term_coefficient(const ScatteringData& s, const SpatialGrid& grid, const Eigen::VectorXcd& g, double t) {
    if (!s.nongeneric()) throw DegenerateScattering("resonance subtraction needs non-generic scattering data");
    if (t < 1.0) throw std::invalid_argument("resonance subtraction needs t >= 1");
    const auto w = grid.weights();
    cd proj = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) proj += w[i] * s.phi[i] * g[static_cast<Eigen::Index>(i)];
    return s.c0 * std::polar(1.0, std::numbers::pi / 4 + t) / std::sqrt(t) * proj;
}

Eigen::VectorXcd resonance_subtracted(const DistortedBasis& b, const Eigen::VectorXcd& g, double t) {
    const auto& s = b.scattering();
    const cd c = resonance_term_coefficient(s, b.grid(), g, t);
    Eigen::VectorXcd out = evolve_linear(b, g, t);
    for (std::size_t i = 0; i < b.grid().n; ++i) out[static_cast<Eigen::Index>(i)] -= c * s.phi[i];
    return out;
}

DecaySeries measure_decay(const DistortedBasis& b, const Eigen::VectorXcd& g, double sigma,
                          const std::vector<double>& times, const DecayOptions& opt) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 1.0) throw std::invalid_argument("measure_decay: times must be >= 1");
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("measure_decay: times must increase");
    }
    const Eigen::VectorXcd gt = apply_multiplier(b, b.forward(g), make_multiplier(opt.multiplier, opt.cutoff));
    std::vector<double> values;
    values.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd v = evolve_profile(b, gt, t);
        if (opt.subtract_resonance) {
            const auto& s = b.scattering();
            const cd c = resonance_term_coefficient(s, b.grid(), g, t);
            for (std::size_t i = 0; i < b.grid().n; ++i) v[static_cast<Eigen::Index>(i)] -= c * s.phi[i];
        }
        values.push_back(weighted_norm(b.grid(), v, sigma));
    }
    std::string label = std::string(to_string(opt.multiplier)) + (opt.subtract_resonance ? "_subtracted" : "");
    return power_series(label, times, std::move(values), opt.fit_lo, opt.fit_hi);
}

cd ray_asymptotics(const FrequencyGrid& fgrid, const Eigen::VectorXcd& gt, double t, double x, const Cutoff& cutoff) {
    if (!(std::abs(x) < t)) throw std::domain_error("ray_asymptotics: needs |x| < t");
    if (t < 1.0) throw std::domain_error("ray_asymptotics: needs t >= 1");
    const double rho = std::sqrt(t * t - x * x);
    const double xi0 = -x / rho;
    const double chi = cutoff.chi1(xi0);
    if (chi == 0.0) return 0.0;
    return std::polar(std::pow(t, -0.5) * chi * std::pow(japanese(xi0), 1.5), std::numbers::pi / 4 + rho) *
           interpolate_xi(fgrid, gt, xi0);
}

}  // namespace kgscat
