#include "kgscat/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kgscat/errors.hpp"

namespace kgscat {

namespace {

constexpr cd I(0.0, 1.0);

// fourth-order central differences, one-sided near the ends
std::vector<double> differentiate(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> d(n, 0.0);
    if (n < 5) {
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2 * h);
        return d;
    }
    for (std::size_t i = 2; i + 2 < n; ++i) d[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
    d[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
    d[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
    d[n - 2] = -(-3 * f[n - 1] - 10 * f[n - 2] + 18 * f[n - 3] - 6 * f[n - 4] + f[n - 5]) / (12 * h);
    d[n - 1] = -(-25 * f[n - 1] + 48 * f[n - 2] - 36 * f[n - 3] + 16 * f[n - 4] - 3 * f[n - 5]) / (12 * h);
    return d;
}

void check_finite(const cd* m, std::size_t n, double xi) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(m[i].real()) || !std::isfinite(m[i].imag()))
            throw DegenerateScattering("non-finite Jost value at xi = " + std::to_string(xi) +
                                       " (grid too coarse for this frequency)");
}

}  // namespace

cd volterra_kernel(double xi, double t) {
    const double z = 2.0 * xi * t;
    if (std::abs(z) < 1e-3) {
        // t * sum_{n=0}^{4} (i z)^n / (n+1)!
        const cd iz = I * z;
        return t * (1.0 + iz / 2.0 + iz * iz / 6.0 + iz * iz * iz / 24.0 + iz * iz * iz * iz / 120.0);
    }
    return (std::exp(I * z) - 1.0) / (2.0 * I * xi);
}

JostSolver::JostSolver(const Profile& V, const SpatialGrid& grid)
    : grid_(grid), V_(V.eval(grid, 0)), dV_(V.eval(grid, 1)) {
    Vr_.assign(V_.rbegin(), V_.rend());
    dVr_.resize(dV_.size());
    for (std::size_t i = 0; i < dV_.size(); ++i) dVr_[i] = -dV_[dV_.size() - 1 - i];
}

JostSolver::JostSolver(std::vector<double> V, std::vector<double> dV, const SpatialGrid& grid)
    : grid_(grid), V_(std::move(V)), dV_(std::move(dV)) {
    if (V_.size() != grid_.n) throw std::invalid_argument("JostSolver: potential size does not match grid");
    if (dV_.empty()) dV_ = differentiate(V_, grid_.h());
    if (dV_.size() != grid_.n) throw std::invalid_argument("JostSolver: derivative size does not match grid");
    Vr_.assign(V_.rbegin(), V_.rend());
    dVr_.resize(dV_.size());
    for (std::size_t i = 0; i < dV_.size(); ++i) dVr_[i] = -dV_[dV_.size() - 1 - i];
}

void JostSolver::plus_column(const std::vector<double>& V, const std::vector<double>& dV, double xi, cd* m,
                             cd* dm) const {
    const std::size_t n = grid_.n;
    const double h = grid_.h();
    const double c = h * h / 12.0;
    const cd two_i_xi = 2.0 * I * xi;
    cd S1 = 0.0, S0 = 0.0;
    for (std::size_t ii = n; ii-- > 0;) {
        const double x = grid_.x(ii);
        const cd E = std::polar(1.0, 2.0 * xi * x);
        if (ii == n - 1) {
            m[ii] = 1.0;
            dm[ii] = 0.0;
        } else {
            const cd tail = std::conj(E) * S1;
            m[ii] = (1.0 + (tail - S0) / two_i_xi) / (1.0 - c * V[ii]);
            const cd rhs = -(tail + 0.5 * h * V[ii] * m[ii]) - c * (two_i_xi * V[ii] * m[ii] + dV[ii] * m[ii]);
            dm[ii] = rhs / (1.0 + c * V[ii]);
        }
        const double w = ii == n - 1 ? 0.5 * h : h;
        const cd vm = w * V[ii] * m[ii];
        S1 += vm * E;
        S0 += vm;
    }
}

void JostSolver::column(double xi, Side side, cd* m, cd* dm) const {
    if (xi == 0.0) throw std::invalid_argument("JostSolver: xi = 0 is not a valid node");
    const std::size_t n = grid_.n;
    if (side == Side::plus) {
        plus_column(V_, dV_, xi, m, dm);
    } else {
        plus_column(Vr_, dVr_, xi, m, dm);
        for (std::size_t i = 0; i < n / 2; ++i) {
            std::swap(m[i], m[n - 1 - i]);
            std::swap(dm[i], dm[n - 1 - i]);
        }
        for (std::size_t i = 0; i < n; ++i) dm[i] = -dm[i];
    }
    check_finite(m, n, xi);
    check_finite(dm, n, xi);
}

JostHalf solve_jost(const JostSolver& solver, const FrequencyGrid& fgrid, Side side) {
    JostHalf out;
    out.side = side;
    out.grid = solver.grid();
    out.fgrid = fgrid;
    out.m.resize(out.grid.n, fgrid.n);
    out.dm.resize(out.grid.n, fgrid.n);
    for (std::size_t k = 0; k < fgrid.n; ++k) solver.column(fgrid.xi(k), side, out.m.col(k).data(), out.dm.col(k).data());
    return out;
}

JostHalf solve_jost(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid, Side side) {
    return solve_jost(JostSolver(V, grid), fgrid, side);
}

JostTable solve_jost(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid) {
    const JostSolver solver(V, grid);
    return {solve_jost(solver, fgrid, Side::plus), solve_jost(solver, fgrid, Side::minus)};
}

JostHalf solve_jost_direct(const std::vector<double>& V_in, const std::vector<double>& dV_in, const SpatialGrid& grid,
                           const FrequencyGrid& fgrid, Side side) {
    const std::size_t n = grid.n;
    if (V_in.size() != n || dV_in.size() != n) throw std::invalid_argument("solve_jost_direct: size mismatch");
    std::vector<double> V = V_in, dV = dV_in;
    if (side == Side::minus) {
        for (std::size_t i = 0; i < n; ++i) {
            V[i] = V_in[n - 1 - i];
            dV[i] = -dV_in[n - 1 - i];
        }
    }
    const double h = grid.h();
    const double c = h * h / 12.0;
    JostHalf out;
    out.side = side;
    out.grid = grid;
    out.fgrid = fgrid;
    out.m.resize(n, fgrid.n);
    out.dm.resize(n, fgrid.n);
    std::vector<cd> m(n), dm(n);
    for (std::size_t k = 0; k < fgrid.n; ++k) {
        const double xi = fgrid.xi(k);
        for (std::size_t ii = n; ii-- > 0;) {
            if (ii == n - 1) {
                m[ii] = 1.0;
                dm[ii] = 0.0;
                continue;
            }
            cd sum_d = 0.0, sum_e = 0.0;
            for (std::size_t j = ii + 1; j < n; ++j) {
                const double w = j == n - 1 ? 0.5 * h : h;
                const double t = grid.x(j) - grid.x(ii);
                sum_d += w * volterra_kernel(xi, t) * V[j] * m[j];
                sum_e += w * std::polar(1.0, 2.0 * xi * t) * V[j] * m[j];
            }
            m[ii] = (1.0 + sum_d) / (1.0 - c * V[ii]);
            const cd rhs = -(sum_e + 0.5 * h * V[ii] * m[ii]) - c * (2.0 * I * xi * V[ii] * m[ii] + dV[ii] * m[ii]);
            dm[ii] = rhs / (1.0 + c * V[ii]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t src = side == Side::plus ? i : n - 1 - i;
            out.m(i, k) = m[src];
            out.dm(i, k) = side == Side::plus ? dm[src] : -dm[src];
        }
    }
    return out;
}

JostCenter center_values(const JostTable& jost) {
    const std::size_t c = jost.grid().center();
    return {jost.plus.m.row(c).transpose(), jost.plus.dm.row(c).transpose(), jost.minus.m.row(c).transpose(),
            jost.minus.dm.row(c).transpose()};
}

cd wronskian(const JostCenter& c, const FrequencyGrid& fgrid, std::size_t k) {
    const double xi = fgrid.xi(k);
    return -2.0 * I * xi * c.mp[k] * c.mm[k] + c.mp[k] * c.dmm[k] - c.mm[k] * c.dmp[k];
}

cd wronskian(const JostTable& jost, std::size_t k) { return wronskian(center_values(jost), jost.fgrid(), k); }

const char* to_string(Classification c) { return c == Classification::generic ? "generic" : "nongeneric"; }

double ScatteringData::unitarity_defect() const {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < T.size(); ++k) {
        const double t2 = std::norm(T[k]);
        worst = std::max(worst, std::abs(t2 + std::norm(R_plus[k]) - 1.0));
        worst = std::max(worst, std::abs(t2 + std::norm(R_minus[k]) - 1.0));
    }
    return worst;
}

double ScatteringData::conjugation_defect() const {
    double worst = 0.0;
    for (std::size_t k = 0; k < fgrid.n; ++k) {
        const std::size_t j = fgrid.mirror(k);
        worst = std::max(worst, std::abs(T[j] - std::conj(T[k])));
        worst = std::max(worst, std::abs(R_plus[j] - std::conj(R_plus[k])));
        worst = std::max(worst, std::abs(R_minus[j] - std::conj(R_minus[k])));
    }
    return worst;
}

cd extrapolate_to_zero(const cd f[4]) {
    // nodes -3a, -a, a, 3a; exact for even quadratics in xi
    return (9.0 * (f[1] + f[2]) - (f[0] + f[3])) / 16.0;
}

ScatteringData scattering_data(const JostCenter& c, const SpatialGrid& grid, const FrequencyGrid& fgrid,
                               const Eigen::MatrixXcd& phi_columns) {
    const std::size_t n = fgrid.n;
    ScatteringData s;
    s.grid = grid;
    s.fgrid = fgrid;
    s.W.resize(n);
    s.T.resize(n);
    s.R_plus.resize(n);
    s.R_minus.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double xi = fgrid.xi(k);
        const std::size_t j = fgrid.mirror(k);  // -xi
        s.W[k] = wronskian(c, fgrid, k);
        s.T[k] = -2.0 * I * xi / s.W[k];
        s.R_minus[k] = s.T[k] * (c.mp[k] * c.dmm[j] - c.dmp[k] * c.mm[j]) / (2.0 * I * xi);
        s.R_plus[k] = s.T[k] * (c.mp[j] * c.dmm[k] - c.dmp[j] * c.mm[k]) / (2.0 * I * xi);
        if (!std::isfinite(std::abs(s.T[k])) || !std::isfinite(std::abs(s.R_minus[k])) ||
            !std::isfinite(std::abs(s.R_plus[k])))
            throw DegenerateScattering("non-finite scattering coefficient at xi = " + std::to_string(xi));
    }
    const std::size_t h = n / 2;
    const cd tv[4] = {s.T[h - 2], s.T[h - 1], s.T[h], s.T[h + 1]};
    const cd rv[4] = {s.R_minus[h - 2], s.R_minus[h - 1], s.R_minus[h], s.R_minus[h + 1]};
    s.T0 = extrapolate_to_zero(tv);
    s.Rm0 = extrapolate_to_zero(rv);
    s.classification = std::abs(s.T0) > kClassificationThreshold ? Classification::nongeneric : Classification::generic;
    if (!s.nongeneric()) return s;

    const cd denom = 1.0 + s.Rm0;
    if (std::abs(denom) < kDegenerateTolerance)
        throw DegenerateScattering("|1 + R-(0)| = " + std::to_string(std::abs(denom)) + " below tolerance");
    const cd kappa = s.T0 / denom;
    const cd c0 = s.T0 * s.T0 / denom / std::sqrt(2.0 * std::numbers::pi);
    s.kappa = kappa.real();
    s.kappa_imag = kappa.imag();
    s.c0 = c0.real();
    s.c0_imag = c0.imag();

    if (phi_columns.rows() != static_cast<Eigen::Index>(grid.n) || phi_columns.cols() != 4)
        throw std::invalid_argument("scattering_data: phi columns must be n x 4");
    s.phi.resize(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const cd f[4] = {phi_columns(i, 0), phi_columns(i, 1), phi_columns(i, 2), phi_columns(i, 3)};
        const cd v = extrapolate_to_zero(f);
        s.phi[i] = v.real();
        s.phi_imag_residual = std::max(s.phi_imag_residual, std::abs(v.imag()));
    }
    return s;
}

ScatteringData scattering_data(const JostTable& jost) {
    const std::size_t h = jost.fgrid().n / 2;
    return scattering_data(center_values(jost), jost.grid(), jost.fgrid(), jost.plus.m.middleCols(h - 2, 4));
}

}  // namespace kgscat
