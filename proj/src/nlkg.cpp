#include "kgscat/nlkg.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgscat/errors.hpp"

namespace kgscat {

namespace {

constexpr cd I(0.0, 1.0);

double weighted_window_norm(const Trajectory& traj, const Eigen::VectorXcd& v, double sigma) {
    const auto w = traj.grid.weights();
    double acc = 0.0;
    for (std::size_t r = 0; r < traj.rows(); ++r) {
        const double x = traj.x(r);
        acc += w[traj.row_lo + r] * std::norm(v[static_cast<Eigen::Index>(r)]) * std::pow(1.0 + x * x, -sigma);
    }
    return std::sqrt(acc);
}

std::string format_lambda(double l) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.4f", l);
    return buf;
}

void check_ray(const DistortedBasis& b, double t, double x, double extent) {
    if (std::abs(x) > extent) throw std::domain_error("ray exits grid at t = " + std::to_string(t));
    // the discrete inversion repeats in x with period 2 pi / dxi
    if (t + std::abs(x) >= b.fgrid().period())
        throw std::domain_error("ray at t = " + std::to_string(t) + " outruns the frequency-grid period");
}

}  // namespace

std::size_t Trajectory::step_index(double t) const {
    const double s = t / dt;
    const double n = std::round(s);
    if (std::abs(s - n) > 1e-6 || n < 0 || n >= static_cast<double>(times.size()))
        throw std::out_of_range("no stored step at t = " + std::to_string(t));
    return static_cast<std::size_t>(n);
}

std::size_t Trajectory::profile_index(double t) const {
    for (std::size_t k = 0; k < profile_times.size(); ++k)
        if (std::abs(profile_times[k] - t) <= 1e-9 * std::max(1.0, t)) return k;
    throw std::out_of_range("no stored profile at t = " + std::to_string(t));
}

Eigen::VectorXcd field_from_profile(const DistortedBasis& b, const Eigen::VectorXcd& gt, double t) {
    return b.inverse(apply_multiplier(b, gt, multipliers::half_wave(t)));
}

Trajectory integrate(const DistortedBasis& b, const std::vector<double>& alpha, const Eigen::VectorXcd& v0,
                     const NlkgOptions& opt) {
    const auto& grid = b.grid();
    const auto& fg = b.fgrid();
    if (alpha.size() != grid.n || v0.size() != static_cast<Eigen::Index>(grid.n))
        throw std::invalid_argument("integrate: alpha and v0 must live on the basis grid");
    if (!(opt.dt > 0.0) || opt.dt > 0.1 + 1e-15) throw std::invalid_argument("integrate: need 0 < dt <= 0.1");
    if (!(opt.t_max > 0.0)) throw std::invalid_argument("integrate: t_max must be positive");
    const double steps_f = opt.t_max / opt.dt;
    const std::size_t steps = static_cast<std::size_t>(std::llround(steps_f));
    if (std::abs(steps_f - static_cast<double>(steps)) > 1e-6)
        throw std::invalid_argument("integrate: t_max must be a multiple of dt");
    const double stride_f = opt.profile_stride / opt.dt;
    const std::size_t stride = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(stride_f)));
    const bool has_phi = b.scattering().nongeneric();

    // rows that carry alpha or the diagnostics
    double amax = 0.0;
    for (double a : alpha) amax = std::max(amax, std::abs(a));
    std::size_t lo = grid.n, hi = 0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const bool keep = (amax > 0.0 && std::abs(alpha[i]) > opt.alpha_cut * amax) ||
                          std::abs(grid.x(i)) <= opt.diag_radius;
        if (keep) lo = std::min(lo, i), hi = std::max(hi, i + 1);
    }
    if (lo >= hi) lo = grid.center(), hi = lo + 1;
    const auto nw = static_cast<Eigen::Index>(hi - lo);

    Trajectory tr;
    tr.grid = grid;
    tr.fgrid = fg;
    tr.dt = opt.dt;
    tr.row_lo = lo;
    tr.row_hi = hi;
    tr.alpha = alpha;

    const Eigen::MatrixXcd Ew = b.e().middleRows(static_cast<Eigen::Index>(lo), nw);
    const Eigen::VectorXd ww = b.x_weights().segment(static_cast<Eigen::Index>(lo), nw);
    Eigen::VectorXd aw(nw), phiw = Eigen::VectorXd::Zero(nw);
    for (Eigen::Index r = 0; r < nw; ++r) {
        aw[r] = alpha[lo + static_cast<std::size_t>(r)];
        if (has_phi) phiw[r] = b.scattering().phi[lo + static_cast<std::size_t>(r)];
    }
    const Eigen::VectorXd awx = aw.cwiseProduct(ww);
    Eigen::VectorXd jap(static_cast<Eigen::Index>(fg.n));
    for (std::size_t k = 0; k < fg.n; ++k) jap[static_cast<Eigen::Index>(k)] = japanese(fg.xi(k));
    const double dxi = fg.d();

    Eigen::VectorXcd phase(jap.size());
    auto set_phase = [&](double t) {
        for (Eigen::Index k = 0; k < jap.size(); ++k) phase[k] = std::polar(1.0, t * jap[k]);
    };
    // returns d g~/dt and, optionally, v on the window and <phi, alpha u^2>
    auto rhs = [&](double t, const Eigen::VectorXcd& g, Eigen::VectorXcd* v_out, cd* pu2) {
        set_phase(t);
        const Eigen::VectorXcd v = Ew * (g.cwiseProduct(phase) * dxi);
        const Eigen::VectorXd u = 2.0 * v.real();
        const Eigen::VectorXd au2 = awx.cwiseProduct(u.cwiseAbs2());
        if (v_out) *v_out = v;
        if (pu2) *pu2 = phiw.dot(au2);
        Eigen::VectorXcd F = Ew.adjoint() * au2.cast<cd>();
        for (Eigen::Index k = 0; k < F.size(); ++k) F[k] = std::conj(phase[k]) * F[k] / (2.0 * I * jap[k]);
        return F;
    };

    Eigen::VectorXcd g = b.forward(v0);
    tr.v0 = b.project_continuous(v0);
    if (has_phi) {
        const auto w = grid.weights();
        for (std::size_t i = 0; i < grid.n; ++i) tr.phi_v0 += w[i] * b.scattering().phi[i] * tr.v0[static_cast<Eigen::Index>(i)];
    }
    const double norm0 = std::max(g.norm(), 1e-300);
    const std::size_t nstore = steps + 1;
    tr.times.reserve(nstore);
    tr.v.reserve(nstore);
    tr.profile_norm.reserve(nstore);
    if (has_phi) tr.phi_alpha_u2.reserve(nstore);

    const double dt = opt.dt;
    for (std::size_t n = 0; n <= steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        Eigen::VectorXcd v;
        cd pu2 = 0.0;
        const Eigen::VectorXcd k1 = rhs(t, g, &v, &pu2);
        tr.times.push_back(t);
        tr.v.push_back(std::move(v));
        if (has_phi) tr.phi_alpha_u2.push_back(pu2);
        const double gn = g.norm();
        tr.profile_norm.push_back(gn * std::sqrt(dxi));
        if (!std::isfinite(gn) || gn > opt.guard_factor * norm0)
            throw IntegratorGuard("profile norm grew past " + std::to_string(opt.guard_factor) +
                                  "x its initial value at t = " + std::to_string(t));
        if (n % stride == 0) {
            tr.profile_times.push_back(t);
            tr.profiles.push_back(g);
        }
        if (n == steps) break;
        const Eigen::VectorXcd k2 = rhs(t + 0.5 * dt, g + 0.5 * dt * k1, nullptr, nullptr);
        const Eigen::VectorXcd k3 = rhs(t + 0.5 * dt, g + 0.5 * dt * k2, nullptr, nullptr);
        const Eigen::VectorXcd k4 = rhs(t + dt, g + dt * k3, nullptr, nullptr);
        g += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    if (tr.profile_times.back() != tr.times.back()) {
        tr.profile_times.push_back(tr.times.back());
        tr.profiles.push_back(g);
    }
    return tr;
}

cd coefficient_a(const Trajectory& traj, const ScatteringData& s, double t) {
    if (!s.nongeneric() || traj.phi_alpha_u2.empty())
        throw DegenerateScattering("coefficient_a needs non-generic scattering data");
    if (t < 1.0) throw std::invalid_argument("coefficient_a: needs t >= 1");
    const double upper = t - 1.0;
    if (upper > traj.times.back() + 1e-9) throw std::out_of_range("coefficient_a: trajectory too short");
    if (traj.dt > 0.5) throw std::invalid_argument("coefficient_a: storage stride above 0.5");
    const cd c = s.c0 * std::polar(1.0, std::numbers::pi / 4);
    auto f = [&](double sv, cd F) { return std::polar(1.0, t - sv) / std::sqrt(t - sv) * F; };
    cd acc = 0.0;
    const double dt = traj.dt;
    std::size_t n = 0;
    while (n + 1 < traj.times.size() && traj.times[n + 1] <= upper + 1e-12) {
        acc += 0.5 * dt * (f(traj.times[n], traj.phi_alpha_u2[n]) + f(traj.times[n + 1], traj.phi_alpha_u2[n + 1]));
        ++n;
    }
    const double rest = upper - traj.times[n];
    if (rest > 1e-12 && n + 1 < traj.times.size()) {
        const double th = rest / dt;
        const cd Fu = (1.0 - th) * traj.phi_alpha_u2[n] + th * traj.phi_alpha_u2[n + 1];
        acc += 0.5 * rest * (f(traj.times[n], traj.phi_alpha_u2[n]) + f(upper, Fu));
    }
    return c * std::polar(1.0, t) / std::sqrt(t) * traj.phi_v0 + c * acc / (2.0 * I);
}

A0Estimate extract_a0(const Trajectory& traj, const ScatteringData& s) {
    if (!s.nongeneric()) throw DegenerateScattering("extract_a0 needs non-generic scattering data");
    const auto nw = static_cast<Eigen::Index>(traj.rows());
    const auto w = traj.grid.weights();
    Eigen::VectorXd pa(nw);  // w * phi * alpha
    for (Eigen::Index r = 0; r < nw; ++r) {
        const std::size_t i = traj.row_lo + static_cast<std::size_t>(r);
        pa[r] = w[i] * s.phi[i] * traj.alpha[i];
    }
    auto ip = [&](const Eigen::VectorXcd& f) { return pa.cast<cd>().dot(f); };
    const Eigen::VectorXcd& v0 = traj.v[0];

    A0Estimate est;
    cd direct = traj.phi_v0 + 0.5 * ip(v0.cwiseProduct(v0)) - ip(v0.cwiseAbs2().cast<cd>()) -
                ip(v0.conjugate().cwiseProduct(v0.conjugate())) / 6.0;

    const double dt = traj.dt;
    const std::size_t N = traj.times.size();
    if (N < 3) throw std::invalid_argument("extract_a0: trajectory too short");
    const double T = traj.times.back() - 5.0;
    if (T <= 2.0 * dt) throw std::invalid_argument("extract_a0: trajectory too short for the truncation");
    est.truncation = T;
    auto G = [&](std::size_t n) -> Eigen::VectorXcd { return std::polar(1.0, -traj.times[n]) * traj.v[n]; };
    auto ddt = [&](auto&& f, std::size_t n) -> Eigen::VectorXcd {
        if (n == 0) return (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * dt);
        return (f(n + 1) - f(n - 1)) / (2.0 * dt);
    };
    auto Gb = [&](std::size_t n) -> Eigen::VectorXcd { return G(n).conjugate(); };
    auto mod2 = [&](std::size_t n) -> Eigen::VectorXcd { return traj.v[n].cwiseAbs2().cast<cd>(); };

    cd integ[3] = {0.0, 0.0, 0.0};
    double tail_c[3] = {0.0, 0.0, 0.0};
    cd prev[3];
    std::size_t n = 0;
    for (; n + 1 < N && traj.times[n] <= T + 1e-12; ++n) {
        const double sv = traj.times[n];
        const cd f[3] = {std::polar(1.0, sv) * ip(ddt(G, n).cwiseProduct(G(n))),
                         std::polar(1.0, -sv) * ip(ddt(mod2, n)),
                         std::polar(1.0, -3.0 * sv) * ip(ddt(Gb, n).cwiseProduct(Gb(n)))};
        for (int q = 0; q < 3; ++q) {
            if (n > 0) integ[q] += 0.5 * dt * (prev[q] + f[q]);
            prev[q] = f[q];
            if (sv >= 0.5 * T) tail_c[q] = std::max(tail_c[q], std::abs(f[q]) * std::pow(sv, 1.5));
        }
    }
    direct += integ[0] - integ[1] - integ[2] / 3.0;
    est.direct = direct;
    est.tail = 2.0 / std::sqrt(T) * (tail_c[0] + tail_c[1] + tail_c[2] / 3.0);
    est.converged = est.tail <= 0.2 * std::abs(direct);

    // crosscheck: late-window mean of e^{-i pi/4} e^{-it} sqrt(t) a(t) / c0
    const double t_end = traj.times.back();
    std::vector<cd> z;
    for (double t = std::ceil(0.5 * t_end); t <= t_end + 1e-9; t += 1.0)
        z.push_back(std::polar(1.0, -std::numbers::pi / 4 - t) * std::sqrt(t) * coefficient_a(traj, s, t) / s.c0);
    cd mean = 0.0;
    for (cd v : z) mean += v;
    mean /= static_cast<double>(z.size());
    double var = 0.0;
    for (cd v : z) var += std::norm(v - mean);
    est.crosscheck = mean;
    est.crosscheck_spread = std::abs(mean) > 0 ? std::sqrt(var / z.size()) / std::abs(mean) : 0.0;
    return est;
}

bool ResonanceValues::resonant(double threshold) const {
    return std::max(std::abs(plus), std::abs(minus)) > threshold * peak;
}

ResonanceValues resonance_values(const DistortedBasis& b, const std::vector<double>& alpha) {
    const auto& s = b.scattering();
    if (!s.nongeneric()) throw DegenerateScattering("resonance_values needs non-generic scattering data");
    if (alpha.size() != b.grid().n) throw std::invalid_argument("resonance_values: alpha size mismatch");
    Eigen::VectorXcd Y(static_cast<Eigen::Index>(alpha.size()));
    for (std::size_t i = 0; i < alpha.size(); ++i) Y[static_cast<Eigen::Index>(i)] = alpha[i] * s.phi[i] * s.phi[i];
    const Eigen::VectorXcd Yt = b.forward(Y);
    ResonanceValues r;
    r.peak = Yt.cwiseAbs().maxCoeff();
    const double r3 = std::sqrt(3.0);
    r.plus = interpolate_xi(b.fgrid(), Yt, r3);
    r.minus = interpolate_xi(b.fgrid(), Yt, -r3);
    return r;
}

double predicted_amplitude(double c0, cd a0, cd resonance_value) {
    return std::abs(c0 * c0 * a0 * a0 / std::sqrt(8.0) * resonance_value);
}

VModStream::VModStream(const DistortedBasis& b, const std::vector<double>& Y, cd a0) : b_(b) {
    const auto& s = b.scattering();
    if (!s.nongeneric()) throw DegenerateScattering("v_mod needs non-generic scattering data");
    if (Y.size() != b.grid().n) throw std::invalid_argument("v_mod: Y size mismatch");
    Eigen::VectorXcd y(static_cast<Eigen::Index>(Y.size()));
    for (std::size_t i = 0; i < Y.size(); ++i) y[static_cast<Eigen::Index>(i)] = Y[i];
    Yt_ = b.forward(y);
    prefactor_ = s.c0 * s.c0 * a0 * a0 / 2.0;
    I_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.fgrid().n));
}

void VModStream::advance(double t) {
    if (t < t_ - 1e-12) throw std::invalid_argument("VModStream: times must not decrease");
    if (t <= t_) return;
    const auto& fg = b_.fgrid();
    const double span = t - t_;
    for (std::size_t k = 0; k < fg.n; ++k) {
        const double om = 2.0 - japanese(fg.xi(k));
        const double hmax = std::abs(om) > 0 ? std::min(0.25, 0.5 / std::abs(om)) : 0.25;
        std::size_t m = static_cast<std::size_t>(std::ceil(span / hmax));
        m = std::max<std::size_t>(2, m + (m % 2));
        const double h = span / static_cast<double>(m);
        cd acc = 0.0;
        for (std::size_t j = 0; j <= m; ++j) {
            const double sv = t_ + static_cast<double>(j) * h;
            const double wgt = (j == 0 || j == m) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            acc += wgt * std::polar(1.0 / sv, sv * om);
        }
        I_[static_cast<Eigen::Index>(k)] += acc * h / 3.0;
    }
    t_ = t;
}

Eigen::VectorXcd VModStream::frequency(double t) {
    if (t < 1.0) throw std::invalid_argument("v_mod: needs t >= 1");
    advance(t);
    const auto& fg = b_.fgrid();
    Eigen::VectorXcd out(static_cast<Eigen::Index>(fg.n));
    for (std::size_t k = 0; k < fg.n; ++k) {
        const double j = japanese(fg.xi(k));
        const auto kk = static_cast<Eigen::Index>(k);
        out[kk] = prefactor_ * Yt_[kk] / j * std::polar(1.0, t * j) * I_[kk];
    }
    return out;
}

Eigen::VectorXcd VModStream::evaluate(double t, const std::vector<double>& xs) { return b_.evaluate(frequency(t), xs); }

Eigen::VectorXcd v_mod_eval(const DistortedBasis& b, const std::vector<double>& Y, cd a0, double t,
                            const std::vector<double>& xs) {
    VModStream s(b, Y, a0);
    return s.evaluate(t, xs);
}

cd v_mod_eval_point(const DistortedBasis& b, const std::vector<double>& Y, cd a0, double t, double x) {
    return v_mod_eval(b, Y, a0, t, {x})[0];
}

DecaySeries ray_series(const DistortedBasis& b, const Trajectory& traj, double lambda, const std::vector<double>& times,
                       double extent, double fit_lo, double fit_hi) {
    std::vector<double> vals;
    for (double t : times) {
        const double x = lambda * t;
        check_ray(b, t, x, extent);
        const Eigen::VectorXcd& g = traj.profiles[traj.profile_index(t)];
        const Eigen::VectorXcd q = apply_multiplier(b, g, multipliers::half_wave(t)) * b.xi_weight();
        vals.push_back(std::abs((b.row_at(x) * q).value()));
    }
    return loglinear_series("ray " + format_lambda(lambda), times, std::move(vals), fit_lo, fit_hi);
}

DecaySeries ray_series(const DistortedBasis& b, VModStream& stream, double lambda, const std::vector<double>& times,
                       double extent, double fit_lo, double fit_hi) {
    std::vector<double> vals;
    for (double t : times) {
        const double x = lambda * t;
        check_ray(b, t, x, extent);
        vals.push_back(std::abs(stream.evaluate(t, {x})[0]));
    }
    return loglinear_series("v_mod ray " + format_lambda(lambda), times, std::move(vals), fit_lo, fit_hi);
}

WDiagnostics w_diagnostics(const Trajectory& traj, const ScatteringData& s, double sigma,
                           const std::vector<double>& times, double fit_lo, double fit_hi) {
    if (!s.nongeneric()) throw DegenerateScattering("w_diagnostics needs non-generic scattering data");
    std::vector<double> nv, nvw;
    const auto nw = static_cast<Eigen::Index>(traj.rows());
    Eigen::VectorXcd phiw(nw);
    for (Eigen::Index r = 0; r < nw; ++r) phiw[r] = s.phi[traj.row_lo + static_cast<std::size_t>(r)];
    for (double t : times) {
        const Eigen::VectorXcd& v = traj.v[traj.step_index(t)];
        nv.push_back(weighted_window_norm(traj, v, sigma));
        const cd a = coefficient_a(traj, s, t);
        nvw.push_back(weighted_window_norm(traj, v - a * phiw, sigma));
    }
    return {power_series("v", times, std::move(nv), fit_lo, fit_hi),
            power_series("v_minus_w", times, std::move(nvw), fit_lo, fit_hi)};
}

DecaySeries phase_filtered_series(const Trajectory& traj, double sigma, const std::vector<double>& times, double fit_lo,
                                  double fit_hi) {
    std::vector<double> vals;
    for (double t : times) {
        const std::size_t n = traj.step_index(t);
        if (n == 0 || n + 1 >= traj.times.size()) throw std::out_of_range("phase_filtered_series: needs interior steps");
        const Eigen::VectorXcd d = (std::polar(1.0, -traj.times[n + 1]) * traj.v[n + 1] -
                                    std::polar(1.0, -traj.times[n - 1]) * traj.v[n - 1]) /
                                   (2.0 * traj.dt);
        vals.push_back(weighted_window_norm(traj, d, sigma));
    }
    return power_series("phase_filtered", times, std::move(vals), fit_lo, fit_hi);
}

cd profile_log_growth(const Trajectory& traj, double xi0, double fit_lo, double fit_hi) {
    std::vector<double> l;
    std::vector<cd> z;
    for (std::size_t k = 0; k < traj.profile_times.size(); ++k) {
        const double t = traj.profile_times[k];
        if (t < fit_lo || t > fit_hi) continue;
        l.push_back(std::log(t));
        z.push_back(interpolate_xi(traj.fgrid, traj.profiles[k], xi0));
    }
    if (l.size() < 2) throw std::invalid_argument("profile_log_growth: window holds fewer than two snapshots");
    double ml = 0.0;
    cd mz = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) ml += l[i], mz += z[i];
    ml /= l.size();
    mz /= static_cast<double>(l.size());
    double sll = 0.0;
    cd slz = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        sll += (l[i] - ml) * (l[i] - ml);
        slz += (l[i] - ml) * (z[i] - mz);
    }
    return slz / sll;
}

}  // namespace kgscat

namespace kgscat {

std::vector<double> integer_times(double a, double b, std::size_t n) {
    std::vector<double> out;
    for (double t : geometric_times(a, b, n)) {
        const double r = std::round(t);
        if (out.empty() || r > out.back()) out.push_back(r);
    }
    return out;
}

ModScatteringReport analyze(const DistortedBasis& b, const Trajectory& traj, const AnalysisOptions& opt) {
    const auto& s = b.scattering();
    if (!s.nongeneric()) throw DegenerateScattering("modified-scattering analysis needs non-generic scattering data");
    ModScatteringReport rep;
    rep.c0 = s.c0;
    rep.resonance = resonance_values(b, traj.alpha);
    rep.resonant = rep.resonance.resonant(opt.resonance_threshold);
    rep.a0 = extract_a0(traj, s);
    const cd a0 = rep.a0.direct;
    bool alpha_zero = true;
    for (double a : traj.alpha) alpha_zero = alpha_zero && a == 0.0;
    rep.degenerate = alpha_zero || std::abs(a0) == 0.0;
    rep.A_pred_plus = predicted_amplitude(s.c0, a0, rep.resonance.minus);
    rep.A_pred_minus = predicted_amplitude(s.c0, a0, rep.resonance.plus);

    const double t_end = traj.times.back();
    const double r3h = std::sqrt(3.0) / 2.0;
    const std::vector<double> lambdas = {-r3h, 0.0, r3h};
    const auto times = integer_times(opt.ray_t_min, t_end, opt.n_times);

    std::vector<double> Y(b.grid().n);
    for (std::size_t i = 0; i < Y.size(); ++i) Y[i] = traj.alpha[i] * s.phi[i] * s.phi[i];
    VModStream stream(b, Y, a0);
    std::vector<std::vector<double>> vm(lambdas.size());
    for (double t : times) {
        std::vector<double> xs;
        for (double l : lambdas) {
            check_ray(b, t, l * t, opt.extent);
            xs.push_back(l * t);
        }
        const Eigen::VectorXcd v = stream.evaluate(t, xs);
        for (std::size_t j = 0; j < lambdas.size(); ++j) vm[j].push_back(std::abs(v[static_cast<Eigen::Index>(j)]));
    }
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        RayResult r;
        r.lambda = lambdas[j];
        r.A_pred = lambdas[j] > 0 ? rep.A_pred_plus : (lambdas[j] < 0 ? rep.A_pred_minus : 0.0);
        r.vmod = loglinear_series("v_mod ray " + format_lambda(lambdas[j]), times, vm[j], opt.fit_lo, opt.fit_hi);
        r.traj = ray_series(b, traj, lambdas[j], times, opt.extent, opt.fit_lo, opt.fit_hi);
        r.traj.label = "trajectory ray " + format_lambda(lambdas[j]);
        rep.rays.push_back(std::move(r));
    }

    const auto wt = integer_times(std::max(1.0, opt.fit_lo), t_end - 1.0, opt.n_times);
    rep.w = w_diagnostics(traj, s, opt.sigma, wt, opt.fit_lo, opt.fit_hi);
    rep.phase_filtered = phase_filtered_series(traj, opt.sigma, wt, opt.fit_lo, opt.fit_hi);

    const double r3 = std::sqrt(3.0);
    const double lo = std::max(opt.fit_lo, 0.25 * t_end);
    rep.K_plus = profile_log_growth(traj, r3, lo, t_end);
    rep.K_minus = profile_log_growth(traj, -r3, lo, t_end);
    rep.K_pred_plus = s.c0 * s.c0 * a0 * a0 * rep.resonance.plus / 4.0;
    rep.K_pred_minus = s.c0 * s.c0 * a0 * a0 * rep.resonance.minus / 4.0;
    return rep;
}

}  // namespace kgscat
