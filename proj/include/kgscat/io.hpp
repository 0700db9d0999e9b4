#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgscat/fit.hpp"
#include "kgscat/grid.hpp"
#include "kgscat/spectral.hpp"

namespace kgscat {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// shortest decimal that parses back to the same double
std::string format_double(double v);

std::string csv_escape(const std::string& field);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

CsvTable scattering_table(const ScatteringData& s);
CsvTable phi_table(const ScatteringData& s);
CsvTable series_table(const DecaySeries& s);

struct PlotLine {
    std::string label;
    std::vector<double> x, y;
};
// log-log line plot; decorative only
void write_svg_loglog(const std::string& path, const std::string& title, const std::vector<PlotLine>& lines);

// Profile snapshots in the little-endian container: magic, version,
// count, n_xi, Xi, times, then row-major complex doubles.
void save_profiles(const std::string& path, const FrequencyGrid& fgrid, const std::vector<double>& times,
                   const std::vector<Eigen::VectorXcd>& profiles);
void load_profiles(const std::string& path, FrequencyGrid& fgrid, std::vector<double>& times,
                   std::vector<Eigen::VectorXcd>& profiles);

}  // namespace kgscat
