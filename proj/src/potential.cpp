#include "kgscat/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace kgscat {

namespace {

// d^l/dy^l sech^2(y), l <= 3, in terms of tau = tanh y
double sech2_deriv(double y, int l) {
    const double t = std::tanh(y);
    const double s = 1.0 - t * t;
    switch (l) {
        case 0: return s;
        case 1: return -2.0 * t * s;
        case 2: return s * (6.0 * t * t - 2.0);
        case 3: return s * (16.0 * t - 24.0 * t * t * t);
    }
    throw std::invalid_argument("derivative order above 3");
}

// d^l/dy^l sech(y) tanh(y)
double sechtanh_deriv(double y, int l) {
    const double t = std::tanh(y);
    const double c = 1.0 / std::cosh(y);
    const double t2 = t * t;
    switch (l) {
        case 0: return c * t;
        case 1: return c * (1.0 - 2.0 * t2);
        case 2: return -c * t * (5.0 - 6.0 * t2);
        case 3: return c * (-5.0 + 28.0 * t2 - 24.0 * t2 * t2);
    }
    throw std::invalid_argument("derivative order above 3");
}

// d^l/dy^l exp(-y^2) = (-1)^l H_l(y) exp(-y^2)
double gauss_deriv(double y, int l) {
    const double g = std::exp(-y * y);
    switch (l) {
        case 0: return g;
        case 1: return -2.0 * y * g;
        case 2: return (4.0 * y * y - 2.0) * g;
        case 3: return -(8.0 * y * y * y - 12.0 * y) * g;
    }
    throw std::invalid_argument("derivative order above 3");
}

}  // namespace

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::free: return "free";
        case ProfileKind::poeschl_teller: return "poeschl_teller";
        case ProfileKind::gaussian_well: return "gaussian_well";
        case ProfileKind::sech_squared: return "sech_squared";
        case ProfileKind::sech_tanh: return "sech_tanh";
        case ProfileKind::sampled: return "sampled";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& name) {
    for (auto k : {ProfileKind::free, ProfileKind::poeschl_teller, ProfileKind::gaussian_well,
                   ProfileKind::sech_squared, ProfileKind::sech_tanh, ProfileKind::sampled})
        if (to_string(k) == name) return k;
    if (name == "zero") return ProfileKind::free;
    throw std::invalid_argument("unknown profile kind '" + name + "'");
}

Profile Profile::free() { return Profile(ProfileKind::free, 0.0, 1.0); }
Profile Profile::poeschl_teller() { return Profile(ProfileKind::poeschl_teller, -2.0, 1.0); }

Profile Profile::gaussian_well(double amplitude, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_well: width must be positive");
    return Profile(ProfileKind::gaussian_well, amplitude, width);
}

Profile Profile::sech_squared(double amplitude, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("sech_squared: width must be positive");
    return Profile(ProfileKind::sech_squared, amplitude, width);
}

Profile Profile::sech_tanh(double amplitude, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("sech_tanh: width must be positive");
    return Profile(ProfileKind::sech_tanh, amplitude, width);
}

Profile Profile::sampled(const SpatialGrid& grid, std::vector<double> values) {
    if (values.size() != grid.n) throw std::invalid_argument("sampled profile: size does not match grid");
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("sampled profile: non-finite sample");
    Profile p(ProfileKind::sampled, 0.0, 1.0);
    p.sample_grid_ = grid;
    const std::size_t n = values.size();
    const double h = grid.h();
    std::vector<double> d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        // samples are taken as zero outside the grid
        const double l = i > 0 ? values[i - 1] : 0.0;
        const double r = i + 1 < n ? values[i + 1] : 0.0;
        d1[i] = (r - l) / (2.0 * h);
        d2[i] = (r - 2.0 * values[i] + l) / (h * h);
    }
    p.samples_[0] = std::move(values);
    p.samples_[1] = std::move(d1);
    p.samples_[2] = std::move(d2);
    return p;
}

bool Profile::is_zero() const {
    if (kind_ == ProfileKind::free) return true;
    if (kind_ == ProfileKind::sampled) {
        for (double v : samples_[0])
            if (v != 0.0) return false;
        return true;
    }
    return amplitude_ == 0.0;
}

double lagrange_cubic(const std::vector<double>& y, double x0, double h, double x) {
    const std::size_t n = y.size();
    if (n < 4) throw std::invalid_argument("lagrange_cubic: need at least 4 samples");
    const double s = (x - x0) / h;
    long j = static_cast<long>(std::floor(s)) - 1;
    if (j < 0) j = 0;
    if (j > static_cast<long>(n) - 4) j = static_cast<long>(n) - 4;
    const double u = s - static_cast<double>(j);  // in [1,2] for interior points
    const double w0 = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    const double w1 = u * (u - 2) * (u - 3) / 2.0;
    const double w2 = -u * (u - 1) * (u - 3) / 2.0;
    const double w3 = u * (u - 1) * (u - 2) / 6.0;
    return w0 * y[j] + w1 * y[j + 1] + w2 * y[j + 2] + w3 * y[j + 3];
}

double Profile::sampled_value(double x, int deriv) const {
    const double L = sample_grid_.L;
    if (x < -L || x > L) return 0.0;
    return lagrange_cubic(samples_[deriv], -L, sample_grid_.h(), x);
}

double Profile::operator()(double x, int deriv) const {
    if (deriv < 0 || deriv > derivative_order_available())
        throw std::invalid_argument("derivative order " + std::to_string(deriv) + " not available for " +
                                    to_string(kind_));
    const double w = width_;
    const double scale = std::pow(w, -deriv);
    switch (kind_) {
        case ProfileKind::free: return 0.0;
        case ProfileKind::poeschl_teller:
        case ProfileKind::sech_squared: return amplitude_ * scale * sech2_deriv(x / w, deriv);
        case ProfileKind::gaussian_well: return amplitude_ * scale * gauss_deriv(x / w, deriv);
        case ProfileKind::sech_tanh: return amplitude_ * scale * sechtanh_deriv(x / w, deriv);
        case ProfileKind::sampled: return sampled_value(x, deriv);
    }
    return 0.0;
}

std::vector<double> Profile::eval(const SpatialGrid& grid, int deriv) const {
    std::vector<double> out(grid.n);
    if (kind_ == ProfileKind::sampled && grid.n == sample_grid_.n && grid.L == sample_grid_.L) {
        if (deriv < 0 || deriv > 2) (void)(*this)(0.0, deriv);  // throws
        out = samples_[deriv];
        return out;
    }
    for (std::size_t i = 0; i < grid.n; ++i) out[i] = (*this)(grid.x(i), deriv);
    return out;
}

double moment_norm(const Profile& spec, int N, int deriv, const SpatialGrid& grid) {
    const auto v = spec.eval(grid, deriv);
    const auto w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        acc += w[i] * std::pow(1.0 + x * x, 0.5 * N) * std::abs(v[i]);
    }
    return acc;
}

int bound_state_count_bound(const Profile& spec, const SpatialGrid& grid) {
    const auto v = spec.eval(grid, 0);
    const auto w = grid.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) acc += w[i] * std::abs(grid.x(i)) * std::abs(v[i]);
    // quadrature noise must not push an exact integer over the next ceiling
    return static_cast<int>(std::ceil(1.0 + acc - 1e-9));
}

}  // namespace kgscat
