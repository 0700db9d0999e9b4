#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgscat/spectral.hpp"

namespace kgscat {

namespace {

// A4 = -d^2/dx^2 (five-point) + V on interior nodes, zero Dirichlet data outside
void apply_a4(const std::vector<double>& V, double h, const std::vector<double>& z, std::vector<double>& out) {
    const std::size_t n = z.size();
    const double c = 1.0 / (12.0 * h * h);
    auto at = [&](long i) { return (i < 0 || i >= static_cast<long>(n)) ? 0.0 : z[i]; };
    for (std::size_t i = 0; i < n; ++i) {
        const long j = static_cast<long>(i);
        out[i] = c * (at(j - 2) - 16.0 * at(j - 1) + 30.0 * z[i] - 16.0 * at(j + 1) + at(j + 2)) + V[i] * z[i];
    }
}

// Rayleigh quotient iteration on the five-point operator, started from the
// second-order eigenpair
void polish(const std::vector<double>& V, double h, double& E, std::vector<double>& z) {
    const std::size_t n = z.size();
    const lapack_int kl = 2, ku = 2, ldab = 2 * kl + ku + 1;
    const double c = 1.0 / (12.0 * h * h);
    std::vector<double> ab, Az(n);
    std::vector<lapack_int> ipiv(n);
    auto normalize = [&](std::vector<double>& y) {
        double s = 0.0;
        for (double v : y) s += v * v;
        s = std::sqrt(s * h);
        for (double& v : y) v /= s;
    };
    normalize(z);
    for (int it = 0; it < 4; ++it) {
        ab.assign(static_cast<std::size_t>(ldab) * n, 0.0);
        auto set = [&](std::size_t i, std::size_t j, double v) { ab[j * ldab + (kl + ku + i - j)] = v; };
        for (std::size_t i = 0; i < n; ++i) {
            set(i, i, 30.0 * c + V[i] - E);
            if (i + 1 < n) set(i, i + 1, -16.0 * c), set(i + 1, i, -16.0 * c);
            if (i + 2 < n) set(i, i + 2, c), set(i + 2, i, c);
        }
        std::vector<double> rhs = z;
        lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, static_cast<lapack_int>(n), kl, ku, 1, ab.data(), ldab,
                                        ipiv.data(), rhs.data(), static_cast<lapack_int>(n));
        if (info != 0) break;  // exactly singular: E is already an eigenvalue to working precision
        z = rhs;
        normalize(z);
        apply_a4(V, h, z, Az);
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) q += z[i] * Az[i];
        E = q * h;
    }
}

}  // namespace

std::vector<BoundState> bound_states(const std::vector<double>& V, const SpatialGrid& grid, bool polish_vectors) {
    if (V.size() != grid.n) throw std::invalid_argument("bound_states: size mismatch");
    const std::size_t n = grid.n - 2;
    const double h = grid.h();
    std::vector<double> d(n), e(n - 1, -1.0 / (h * h)), Vi(V.begin() + 1, V.end() - 1);
    double vmin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = 2.0 / (h * h) + Vi[i];
        vmin = std::min(vmin, Vi[i]);
    }
    if (vmin >= 0.0) return {};

    lapack_int m = 0;
    std::vector<double> w(n), z;
    std::vector<lapack_int> ifail(n);
    // eigenvalues in (min V - 1, 0); the spectrum of the discrete operator is bounded below by min V
    const double vl = vmin - 1.0, vu = -1e-14;
    // a first call counts, the second computes vectors
    lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n), d.data(), e.data(), vl, vu,
                                     0, 0, 0.0, &m, w.data(), nullptr, 1, ifail.data());
    if (info != 0) throw std::runtime_error("dstevx failed, info = " + std::to_string(info));
    if (m == 0) return {};
    for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 / (h * h) + Vi[i];
    std::fill(e.begin(), e.end(), -1.0 / (h * h));
    z.resize(n * static_cast<std::size_t>(m));
    info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'V', static_cast<lapack_int>(n), d.data(), e.data(), vl, vu, 0, 0, 0.0,
                          &m, w.data(), z.data(), static_cast<lapack_int>(n), ifail.data());
    if (info != 0) throw std::runtime_error("dstevx failed, info = " + std::to_string(info));

    std::vector<BoundState> out;
    for (lapack_int j = 0; j < m; ++j) {
        std::vector<double> y(z.begin() + j * n, z.begin() + (j + 1) * n);
        double E = w[j];
        if (polish_vectors) polish(Vi, h, E, y);
        BoundState b;
        b.energy = E;
        b.psi.assign(grid.n, 0.0);
        std::copy(y.begin(), y.end(), b.psi.begin() + 1);
        const auto wts = grid.weights();
        double s = 0.0;
        for (std::size_t i = 0; i < grid.n; ++i) s += wts[i] * b.psi[i] * b.psi[i];
        s = std::sqrt(s);
        std::size_t imax = 0;
        for (std::size_t i = 0; i < grid.n; ++i)
            if (std::abs(b.psi[i]) > std::abs(b.psi[imax])) imax = i;
        const double sign = b.psi[imax] < 0.0 ? -1.0 : 1.0;
        for (double& v : b.psi) v *= sign / s;
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace kgscat
