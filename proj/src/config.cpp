#include "kgscat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kgscat/errors.hpp"
#include "kgscat/io.hpp"

namespace kgscat {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

const std::map<std::string, std::set<std::string>> kSchema = {
    {"potential", {"kind", "amplitude", "width", "file"}},
    {"coefficient", {"kind", "amplitude", "width", "file"}},
    {"grid", {"L", "nx", "xi_max", "n_xi", "extent"}},
    {"run",
     {"datum", "datum_width", "eps", "dt", "t_max", "sigma", "fit_lo", "fit_hi", "n_times", "multipliers", "subtract",
      "profile_stride", "ray_t_min", "cutoff_plateau", "cutoff_edge", "mass"}},
};

Profile make_profile(const Config& cfg, const std::string& section, const SpatialGrid& grid, Profile fallback) {
    if (!cfg.has(section, "kind")) return fallback;
    ProfileKind kind;
    try {
        kind = profile_kind_from_string(cfg.text(section, "kind", ""));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("[" + section + "] " + e.what());
    }
    const double a = cfg.number(section, "amplitude", 1.0);
    const double w = cfg.number(section, "width", 1.0);
    if (kind != ProfileKind::free && kind != ProfileKind::poeschl_teller && kind != ProfileKind::sampled && !(w > 0.0))
        throw ConfigError("[" + section + "] width must be positive");
    switch (kind) {
        case ProfileKind::free: return Profile::free();
        case ProfileKind::poeschl_teller: return Profile::poeschl_teller();
        case ProfileKind::gaussian_well: return Profile::gaussian_well(a, w);
        case ProfileKind::sech_squared: return Profile::sech_squared(a, w);
        case ProfileKind::sech_tanh: return Profile::sech_tanh(a, w);
        case ProfileKind::sampled: {
            const std::string file = cfg.text(section, "file", "");
            if (file.empty()) throw ConfigError("[" + section + "] sampled kind needs file = PATH");
            CsvTable t;
            try {
                t = read_csv(file);
            } catch (const std::exception& e) {
                throw ConfigError("[" + section + "] " + e.what());
            }
            if (t.rows.size() != grid.n || t.header.size() < 2)
                throw ConfigError("[" + section + "] sampled file must hold columns x,value on the grid");
            std::vector<double> v;
            for (const auto& r : t.rows) v.push_back(r[1]);
            return Profile::sampled(grid, std::move(v));
        }
    }
    return fallback;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config c;
    c.source_ = source;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kSchema.count(section)) throw ConfigError(where + "unknown section [" + section + "]");
            c.data_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        if (section.empty()) throw ConfigError(where + "key outside of a section");
        const std::string key = trim(line.substr(0, eq));
        if (!kSchema.at(section).count(key)) throw ConfigError(where + "unknown key '" + key + "' in [" + section + "]");
        if (c.data_[section].count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
        c.data_[section][key] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    return parse(in, path);
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = data_.find(section);
    return s != data_.end() && s->second.count(key);
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
    return has(section, key) ? data_.at(section).at(key) : fallback;
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = data_.at(section).at(key);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError("[" + section + "] " + key + ": not a number: '" + s + "'");
    return v;
}

long Config::integer(const std::string& section, const std::string& key, long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = data_.at(section).at(key);
    long v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ConfigError("[" + section + "] " + key + ": not an integer: '" + s + "'");
    return v;
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string s = data_.at(section).at(key);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError("[" + section + "] " + key + ": expected true/false, got '" + s + "'");
}

std::vector<std::string> Config::list(const std::string& section, const std::string& key,
                                      const std::vector<std::string>& fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<std::string> out;
    std::stringstream ss(data_.at(section).at(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

RunConfig make_run_config(const Config& cfg) {
    RunConfig rc;
    try {
        rc.grid = SpatialGrid(cfg.number("grid", "L", 40.0), static_cast<std::size_t>(cfg.integer("grid", "nx", 2001)));
        rc.fgrid = FrequencyGrid(cfg.number("grid", "xi_max", 12.0),
                                 static_cast<std::size_t>(cfg.integer("grid", "n_xi", 2048)));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[grid] ") + e.what());
    }
    if (cfg.integer("grid", "nx", 2001) <= 0 || cfg.integer("grid", "n_xi", 2048) <= 0)
        throw ConfigError("[grid] point counts must be positive");
    rc.extent = cfg.number("grid", "extent", std::max(200.0, rc.grid.L));
    if (!(rc.extent >= rc.grid.L)) throw ConfigError("[grid] extent must be >= L");
    rc.potential = make_profile(cfg, "potential", rc.grid, Profile::poeschl_teller());
    rc.coefficient = make_profile(cfg, "coefficient", rc.grid, Profile::sech_squared(1.0, 1.0));

    const std::string datum = cfg.text("run", "datum", "odd_gaussian");
    if (datum == "gaussian") rc.datum = Datum::gaussian;
    else if (datum == "odd_gaussian") rc.datum = Datum::odd_gaussian;
    else throw ConfigError("[run] datum must be gaussian or odd_gaussian");
    rc.datum_width = cfg.number("run", "datum_width", 2.0);
    rc.eps = cfg.number("run", "eps", 0.05);
    rc.dt = cfg.number("run", "dt", 0.1);
    rc.t_max = cfg.number("run", "t_max", 200.0);
    rc.sigma = cfg.number("run", "sigma", 5.0);
    rc.fit_lo = cfg.number("run", "fit_lo", 10.0);
    rc.fit_hi = cfg.number("run", "fit_hi", 200.0);
    const long nt = cfg.integer("run", "n_times", 40);
    rc.subtract = cfg.flag("run", "subtract", true);
    rc.profile_stride = cfg.number("run", "profile_stride", 1.0);
    rc.ray_t_min = cfg.number("run", "ray_t_min", 10.0);
    rc.cutoff.plateau = cfg.number("run", "cutoff_plateau", 0.4);
    rc.cutoff.edge = cfg.number("run", "cutoff_edge", 0.8);
    rc.mass = cfg.number("run", "mass", 1.0);

    if (!(rc.datum_width > 0.0)) throw ConfigError("[run] datum_width must be positive");
    if (!(rc.dt > 0.0) || rc.dt > 0.1) throw ConfigError("[run] dt must lie in (0, 0.1]");
    if (!(rc.t_max > 0.0)) throw ConfigError("[run] t_max must be positive");
    if (std::abs(rc.t_max / rc.dt - std::round(rc.t_max / rc.dt)) > 1e-6)
        throw ConfigError("[run] t_max must be a multiple of dt");
    if (rc.sigma < 0.0) throw ConfigError("[run] sigma must be >= 0");
    if (!(rc.fit_lo >= 1.0) || !(rc.fit_hi > rc.fit_lo)) throw ConfigError("[run] need 1 <= fit_lo < fit_hi");
    if (nt < 2) throw ConfigError("[run] n_times must be >= 2");
    rc.n_times = static_cast<std::size_t>(nt);
    if (!(rc.profile_stride >= rc.dt) || rc.profile_stride > 0.5 * rc.t_max)
        throw ConfigError("[run] profile_stride must lie in [dt, t_max/2]");
    if (!(rc.cutoff.plateau > 0.0) || !(rc.cutoff.edge > rc.cutoff.plateau))
        throw ConfigError("[run] need 0 < cutoff_plateau < cutoff_edge");
    if (rc.mass != 1.0) throw ConfigError("[run] only mass = 1 is supported");
    rc.multipliers.clear();
    for (const auto& m : cfg.list("run", "multipliers", {"none"})) {
        try {
            rc.multipliers.push_back(decay_multiplier_from_string(m));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("[run] ") + e.what());
        }
    }
    return rc;
}

std::vector<double> datum_samples(const RunConfig& rc) {
    std::vector<double> out(rc.grid.n);
    for (std::size_t i = 0; i < rc.grid.n; ++i) {
        const double x = rc.grid.x(i);
        const double g = rc.eps * std::exp(-(x / rc.datum_width) * (x / rc.datum_width));
        out[i] = rc.datum == Datum::odd_gaussian ? x * g : g;
    }
    return out;
}

}  // namespace kgscat
