#include "kgscat/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace kgscat {

namespace {

struct Line {
    double slope, intercept, rms;
    std::size_t n;
};

// least squares y = slope * x + intercept
Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("fit: need at least two points in the window");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) sx += x[i], sy += y[i];
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit: degenerate abscissae");
    Line l{sxy / sxx, 0.0, 0.0, n};
    l.intercept = my - l.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (l.slope * x[i] + l.intercept);
        ss += r * r;
    }
    l.rms = std::sqrt(ss / n);
    return l;
}

}  // namespace

PowerFit fit_power(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_power: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        if (!(y[i] > 0.0) || !(t[i] > 0.0)) throw std::invalid_argument("fit_power: values must be positive");
        lx.push_back(std::log(t[i]));
        ly.push_back(std::log(y[i]));
    }
    const Line l = least_squares(lx, ly);
    return {l.slope, std::exp(l.intercept), l.rms, l.n};
}

LogLinearFit fit_loglinear(const std::vector<double>& t, const std::vector<double>& y, double t_lo, double t_hi) {
    if (t.size() != y.size()) throw std::invalid_argument("fit_loglinear: size mismatch");
    std::vector<double> lx, sy;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi) continue;
        lx.push_back(std::log(t[i]));
        sy.push_back(y[i] * std::sqrt(t[i]));
    }
    const Line l = least_squares(lx, sy);
    return {l.slope, l.intercept, l.rms, l.n};
}

double DecaySeries::predict(double t) const {
    if (model == FitModel::power) return power.amplitude * std::pow(t, power.exponent);
    return (loglinear.A * std::log(t) + loglinear.B) / std::sqrt(t);
}

std::vector<double> DecaySeries::prediction() const {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(predict(t));
    return out;
}

DecaySeries power_series(std::string label, std::vector<double> t, std::vector<double> y, double t_lo, double t_hi) {
    DecaySeries s;
    s.label = std::move(label);
    s.model = FitModel::power;
    s.power = fit_power(t, y, t_lo, t_hi);
    s.times = std::move(t);
    s.values = std::move(y);
    s.t_lo = t_lo;
    s.t_hi = t_hi;
    return s;
}

DecaySeries loglinear_series(std::string label, std::vector<double> t, std::vector<double> y, double t_lo,
                             double t_hi) {
    DecaySeries s;
    s.label = std::move(label);
    s.model = FitModel::loglinear;
    s.loglinear = fit_loglinear(t, y, t_lo, t_hi);
    s.times = std::move(t);
    s.values = std::move(y);
    s.t_lo = t_lo;
    s.t_hi = t_hi;
    return s;
}

std::vector<double> geometric_times(double a, double b, std::size_t n) {
    if (n < 2 || !(a > 0.0) || !(b > a)) throw std::invalid_argument("geometric_times: bad range");
    std::vector<double> out(n);
    const double r = std::log(b / a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = a * std::exp(r * static_cast<double>(i));
    out.front() = a;
    out.back() = b;
    return out;
}

}  // namespace kgscat
