#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "kgscat/grid.hpp"
#include "kgscat/potential.hpp"
#include "kgscat/propagator.hpp"

namespace kgscat {

// Flat key = value text with [section] headers; '#' starts a comment.
class Config {
public:
    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    long integer(const std::string& section, const std::string& key, long fallback) const;
    bool flag(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<std::string> list(const std::string& section, const std::string& key,
                                  const std::vector<std::string>& fallback) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const { return data_; }
    std::string source() const { return source_; }

private:
    std::string source_;
    std::map<std::string, std::map<std::string, std::string>> data_;
};

enum class Datum { gaussian, odd_gaussian };

struct RunConfig {
    Profile potential = Profile::poeschl_teller();
    Profile coefficient = Profile::sech_squared(1.0, 1.0);
    SpatialGrid grid{40.0, 2001};
    FrequencyGrid fgrid{12.0, 2048};
    double extent = 200.0;  // largest |x| for ray evaluation

    Datum datum = Datum::odd_gaussian;
    double datum_width = 2.0;  // exp(-(x/w)^2)
    double eps = 0.05;
    double dt = 0.1;
    double t_max = 200.0;
    double sigma = 5.0;
    double fit_lo = 10.0;
    double fit_hi = 200.0;
    std::size_t n_times = 40;
    std::vector<DecayMultiplier> multipliers{DecayMultiplier::none};
    bool subtract = true;
    double profile_stride = 1.0;
    double ray_t_min = 10.0;
    Cutoff cutoff;
    double mass = 1.0;
};

// Validates every key against the schema; ConfigError on anything unknown or malformed.
RunConfig make_run_config(const Config& cfg);

std::vector<double> datum_samples(const RunConfig& rc);

}  // namespace kgscat
