#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kgscat {

struct PowerFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double residual = 0.0;  // rms of log residuals
    std::size_t count = 0;
};

// value = (A log t + B) / sqrt(t)
struct LogLinearFit {
    double A = 0.0;
    double B = 0.0;
    double residual = 0.0;  // rms of sqrt(t)-rescaled residuals
    std::size_t count = 0;
};

PowerFit fit_power(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi);
LogLinearFit fit_loglinear(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi);

enum class FitModel { power, loglinear };

struct DecaySeries {
    std::string label;
    std::vector<double> times;
    std::vector<double> values;
    FitModel model = FitModel::power;
    PowerFit power;
    LogLinearFit loglinear;
    double t_lo = 0.0, t_hi = 0.0;

    double predict(double t) const;
    std::vector<double> prediction() const;
};

DecaySeries power_series(std::string label, std::vector<double> t, std::vector<double> y, double t_lo, double t_hi);
DecaySeries loglinear_series(std::string label, std::vector<double> t, std::vector<double> y, double t_lo,
                             double t_hi);

// n points, geometric between a and b, both ends included
std::vector<double> geometric_times(double a, double b, std::size_t n);

}  // namespace kgscat
