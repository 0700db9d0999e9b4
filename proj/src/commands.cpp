#include "kgscat/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "kgscat/config.hpp"
#include "kgscat/dft.hpp"
#include "kgscat/errors.hpp"
#include "kgscat/io.hpp"
#include "kgscat/nlkg.hpp"
#include "kgscat/oracle.hpp"
#include "kgscat/propagator.hpp"

namespace kgscat {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

RunConfig load_run_config(const CommandOptions& opt) {
    if (opt.config_path.empty()) return make_run_config(Config{});
    return make_run_config(Config::load(opt.config_path));
}

fs::path out_path(const CommandOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    return fs::path(opt.out_dir) / name;
}

ordered_json cjson(cd z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json power_json(const DecaySeries& s) {
    return {{"label", s.label},
            {"exponent", s.power.exponent},
            {"amplitude", s.power.amplitude},
            {"residual", s.power.residual},
            {"window", {s.t_lo, s.t_hi}},
            {"points", s.power.count}};
}

ordered_json loglinear_json(const DecaySeries& s) {
    return {{"label", s.label},
            {"A", s.loglinear.A},
            {"B", s.loglinear.B},
            {"residual", s.loglinear.residual},
            {"window", {s.t_lo, s.t_hi}},
            {"points", s.loglinear.count}};
}

void write_json(const fs::path& p, const ordered_json& j) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot open " + p.string());
    out << j.dump(2) << "\n";
}

DistortedBasis obtain_basis(const RunConfig& rc, const CommandOptions& opt, std::ostream& log) {
    if (!opt.cache_basis.empty() && fs::exists(opt.cache_basis)) {
        DistortedBasis b = load_basis(opt.cache_basis);
        const auto V = rc.potential.eval(rc.grid, 0);
        const bool same = b.grid().n == rc.grid.n && b.grid().L == rc.grid.L && b.fgrid().n == rc.fgrid.n &&
                          b.fgrid().Xi == rc.fgrid.Xi && b.potential() == V;
        if (same) {
            log << "basis: loaded " << opt.cache_basis << "\n";
            return b;
        }
        log << "basis: cache " << opt.cache_basis << " does not match the config, rebuilding\n";
    }
    DistortedBasis b = DistortedBasis::build(rc.potential, rc.grid, rc.fgrid);
    if (!opt.cache_basis.empty()) {
        save_basis(b, opt.cache_basis);
        log << "basis: cached to " << opt.cache_basis << "\n";
    }
    return b;
}

ordered_json scattering_summary(const DistortedBasis& b) {
    const auto& s = b.scattering();
    ordered_json bound = ordered_json::array();
    for (const auto& bs : b.bound_states()) bound.push_back(bs.energy);
    ordered_json j = {{"classification", to_string(s.classification)},
                      {"T0", cjson(s.T0)},
                      {"R_minus_0", cjson(s.Rm0)},
                      {"unitarity_defect", s.unitarity_defect()},
                      {"conjugation_defect", s.conjugation_defect()},
                      {"bound_states", bound}};
    if (s.nongeneric()) {
        j["kappa"] = s.kappa;
        j["kappa_imag"] = s.kappa_imag;
        j["c0"] = s.c0;
        j["c0_imag"] = s.c0_imag;
        j["phi_imag_residual"] = s.phi_imag_residual;
    }
    return j;
}

}  // namespace

int cmd_scatter(const CommandOptions& opt, std::ostream& log) {
    const RunConfig rc = load_run_config(opt);
    const DistortedBasis b = obtain_basis(rc, opt, log);
    const auto& s = b.scattering();
    write_csv(out_path(opt, "scattering.csv").string(), scattering_table(s));
    if (s.nongeneric()) write_csv(out_path(opt, "phi.csv").string(), phi_table(s));
    ordered_json j = scattering_summary(b);
    j["potential"] = to_string(rc.potential.kind());
    j["bound_state_count_bound"] = bound_state_count_bound(rc.potential, rc.grid);
    write_json(out_path(opt, "summary.json"), j);
    log << "classification " << to_string(s.classification) << ", unitarity defect " << s.unitarity_defect();
    if (s.nongeneric()) log << ", c0 " << s.c0 << ", kappa " << s.kappa;
    log << "\n";
    return 0;
}

int cmd_linear_decay(const CommandOptions& opt, std::ostream& log) {
    const RunConfig rc = load_run_config(opt);
    const DistortedBasis b = obtain_basis(rc, opt, log);
    const auto d = datum_samples(rc);
    Eigen::VectorXcd g(static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) g[static_cast<Eigen::Index>(i)] = d[i];
    const auto times = geometric_times(rc.fit_lo, rc.fit_hi, rc.n_times);
    std::vector<DecaySeries> all;
    for (auto m : rc.multipliers) {
        DecayOptions o;
        o.multiplier = m;
        o.cutoff = rc.cutoff;
        o.fit_lo = rc.fit_lo;
        o.fit_hi = rc.fit_hi;
        all.push_back(measure_decay(b, g, rc.sigma, times, o));
        if (rc.subtract && m == DecayMultiplier::none) {
            if (!b.scattering().nongeneric()) {
                log << "generic potential: no resonance subtraction\n";
            } else {
                o.subtract_resonance = true;
                all.push_back(measure_decay(b, g, rc.sigma, times, o));
            }
        }
    }
    ordered_json fits = ordered_json::array();
    std::vector<PlotLine> lines;
    for (const auto& s : all) {
        write_csv(out_path(opt, "decay_" + s.label + ".csv").string(), series_table(s));
        fits.push_back(power_json(s));
        lines.push_back({s.label, s.times, s.values});
        log << s.label << ": exponent " << s.power.exponent << "\n";
    }
    ordered_json j = {{"sigma", rc.sigma}, {"scattering", scattering_summary(b)}, {"fits", fits}};
    write_json(out_path(opt, "decay_fits.json"), j);
    if (opt.svg) write_svg_loglog(out_path(opt, "decay.svg").string(), "weighted local decay", lines);
    return 0;
}

int cmd_nlkg(const CommandOptions& opt, std::ostream& log) {
    const RunConfig rc = load_run_config(opt);
    const DistortedBasis b = obtain_basis(rc, opt, log);
    if (!b.scattering().nongeneric())
        throw DegenerateScattering("nlkg analysis needs a non-generic potential (phi is undefined)");
    const auto d = datum_samples(rc);
    Eigen::VectorXcd v0(static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) v0[static_cast<Eigen::Index>(i)] = d[i];
    const auto alpha = rc.coefficient.eval(rc.grid, 0);
    NlkgOptions no;
    no.t_max = rc.t_max;
    no.dt = rc.dt;
    no.profile_stride = rc.profile_stride;
    log << "integrating to t = " << rc.t_max << " with dt = " << rc.dt << "\n";
    const Trajectory traj = integrate(b, alpha, v0, no);
    save_profiles(out_path(opt, "trajectory.bin").string(), b.fgrid(), traj.profile_times, traj.profiles);

    AnalysisOptions ao;
    ao.sigma = rc.sigma;
    ao.fit_lo = rc.fit_lo;
    ao.fit_hi = std::min(rc.fit_hi, rc.t_max);
    ao.extent = rc.extent;
    ao.ray_t_min = rc.ray_t_min;
    ao.n_times = rc.n_times;
    const ModScatteringReport rep = analyze(b, traj, ao);

    ordered_json rays = ordered_json::array();
    std::vector<PlotLine> lines;
    for (const auto& r : rep.rays) {
        const std::string tag = r.lambda > 0 ? "plus" : (r.lambda < 0 ? "minus" : "zero");
        write_csv(out_path(opt, "ray_vmod_" + tag + ".csv").string(), series_table(r.vmod));
        write_csv(out_path(opt, "ray_traj_" + tag + ".csv").string(), series_table(r.traj));
        rays.push_back({{"lambda", r.lambda}, {"A_pred", r.A_pred}, {"v_mod", loglinear_json(r.vmod)},
                        {"trajectory", loglinear_json(r.traj)}});
        lines.push_back({r.vmod.label, r.vmod.times, r.vmod.values});
        lines.push_back({r.traj.label, r.traj.times, r.traj.values});
    }
    ordered_json j = {
        {"classification", rep.resonant ? "resonant" : "nonresonant"},
        {"degenerate", rep.degenerate},
        {"eps", rc.eps},
        {"c0", rep.c0},
        {"resonance_values", {{"plus_sqrt3", cjson(rep.resonance.plus)}, {"minus_sqrt3", cjson(rep.resonance.minus)},
                              {"peak", rep.resonance.peak}}},
        {"a0", {{"direct", cjson(rep.a0.direct)}, {"crosscheck", cjson(rep.a0.crosscheck)}, {"tail", rep.a0.tail},
                {"crosscheck_spread", rep.a0.crosscheck_spread}, {"truncation", rep.a0.truncation},
                {"converged", rep.a0.converged}}},
        {"A_pred", {{"plus_ray", rep.A_pred_plus}, {"minus_ray", rep.A_pred_minus}}},
        {"rays", rays},
        {"w_diagnostics", {{"v", power_json(rep.w.v)}, {"v_minus_w", power_json(rep.w.v_minus_w)}}},
        {"phase_filtered", power_json(rep.phase_filtered)},
        {"profile_log_growth", {{"K_plus", cjson(rep.K_plus)}, {"K_minus", cjson(rep.K_minus)},
                                {"K_pred_plus", cjson(rep.K_pred_plus)}, {"K_pred_minus", cjson(rep.K_pred_minus)}}},
    };
    write_json(out_path(opt, "report.json"), j);
    write_csv(out_path(opt, "w_v.csv").string(), series_table(rep.w.v));
    write_csv(out_path(opt, "w_v_minus_w.csv").string(), series_table(rep.w.v_minus_w));
    if (opt.svg) write_svg_loglog(out_path(opt, "rays.svg").string(), "ray amplitudes", lines);
    log << "classification " << (rep.resonant ? "resonant" : "nonresonant") << ", a0 " << rep.a0.direct
        << ", A_pred " << rep.A_pred_plus << "\n";
    if (rep.degenerate) log << "degenerate run: alpha or a0 vanishes\n";
    return 0;
}

int cmd_selftest(const CommandOptions&, std::ostream& log) {
    int failed = 0;
    auto check = [&](const std::string& name, bool ok, double value) {
        log << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
        failed += ok ? 0 : 1;
    };
    // exact power law
    std::vector<double> t = geometric_times(10, 200, 12), y;
    for (double s : t) y.push_back(3.0 * std::pow(s, -0.5));
    const PowerFit pf = fit_power(t, y, 10, 200);
    check("synthetic power fit exponent", std::abs(pf.exponent + 0.5) < 1e-12, pf.exponent);
    y.clear();
    for (double s : t) y.push_back((0.2 * std::log(s) + 0.1) / std::sqrt(s));
    const LogLinearFit lf = fit_loglinear(t, y, 10, 200);
    check("synthetic loglinear fit A", std::abs(lf.A - 0.2) < 1e-12, lf.A);
    // small Poeschl-Teller run against the closed form
    const SpatialGrid grid(30.0, 1201);
    const FrequencyGrid fgrid(8.0, 256);
    const DistortedBasis b = DistortedBasis::build(Profile::poeschl_teller(), grid, fgrid);
    double worst = 0.0;
    for (std::size_t k = 0; k < fgrid.n; ++k)
        worst = std::max(worst, std::abs(b.scattering().T[static_cast<Eigen::Index>(k)] -
                                         oracle::pt_transmission(fgrid.xi(k))));
    check("Poeschl-Teller transmission vs closed form", worst < 1e-4, worst);
    check("Poeschl-Teller nongeneric", b.scattering().nongeneric(), std::abs(b.scattering().T0));
    check("Poeschl-Teller single bound state", b.bound_states().size() == 1,
          static_cast<double>(b.bound_states().size()));
    return failed ? 1 : 0;
}

int run_command(const std::string& name, const CommandOptions& opt, std::ostream& log) {
    try {
        if (name == "scatter") return cmd_scatter(opt, log);
        if (name == "linear-decay") return cmd_linear_decay(opt, log);
        if (name == "nlkg") return cmd_nlkg(opt, log);
        if (name == "selftest") return cmd_selftest(opt, log);
        log << "unknown subcommand " << name << "\n";
        return 2;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateScattering& e) {
        log << "degenerate scattering data: " << e.what() << "\n";
        return 3;
    } catch (const IntegratorGuard& e) {
        log << "integrator guard: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kgscat
