#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "kgscat/grid.hpp"
#include "kgscat/potential.hpp"

namespace kgscat {

using cd = std::complex<double>;

// (e^{2i xi t} - 1) / (2i xi), Taylor series when |2 xi t| < 1e-3
cd volterra_kernel(double xi, double t);

// Solves the Volterra equation for m+ (or m- through the reflected potential)
// one frequency at a time. Trapezoid Nystrom weights with an Euler-Maclaurin
// correction at the moving endpoint; the separable kernel is accumulated
// with two running sums.
class JostSolver {
public:
    JostSolver(const Profile& V, const SpatialGrid& grid);
    JostSolver(std::vector<double> V, std::vector<double> dV, const SpatialGrid& grid);

    const SpatialGrid& grid() const { return grid_; }
    const std::vector<double>& potential() const { return V_; }

    // m and dm must hold grid.n entries
    void column(double xi, Side side, cd* m, cd* dm) const;

private:
    void plus_column(const std::vector<double>& V, const std::vector<double>& dV, double xi, cd* m, cd* dm) const;

    SpatialGrid grid_;
    std::vector<double> V_, dV_;
    std::vector<double> Vr_, dVr_;  // reflected: V(-x), d/dx of V(-x)
};

struct JostHalf {
    Side side = Side::plus;
    SpatialGrid grid;
    FrequencyGrid fgrid;
    Eigen::MatrixXcd m, dm;  // grid.n x fgrid.n
};

struct JostTable {
    JostHalf plus, minus;
    const SpatialGrid& grid() const { return plus.grid; }
    const FrequencyGrid& fgrid() const { return plus.fgrid; }
};

JostHalf solve_jost(const JostSolver& solver, const FrequencyGrid& fgrid, Side side);
JostHalf solve_jost(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid, Side side);
JostTable solve_jost(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid);

// O(n^2) per frequency: literal backward substitution with volterra_kernel and
// the same endpoint-corrected weights. Reference for tests.
JostHalf solve_jost_direct(const std::vector<double>& V, const std::vector<double>& dV, const SpatialGrid& grid,
                           const FrequencyGrid& fgrid, Side side);

// Jost values at x = 0, per frequency node
struct JostCenter {
    Eigen::VectorXcd mp, dmp, mm, dmm;
};

JostCenter center_values(const JostTable& jost);

cd wronskian(const JostTable& jost, std::size_t k);
cd wronskian(const JostCenter& c, const FrequencyGrid& fgrid, std::size_t k);

enum class Classification { generic, nongeneric };
const char* to_string(Classification c);

inline constexpr double kClassificationThreshold = 0.1;
inline constexpr double kDegenerateTolerance = 1e-8;

struct ScatteringData {
    SpatialGrid grid;
    FrequencyGrid fgrid;
    Eigen::VectorXcd W, T, R_plus, R_minus;
    cd T0, Rm0;
    Classification classification = Classification::generic;
    std::vector<double> phi;         // empty when generic
    double phi_imag_residual = 0.0;  // max |Im| of the extrapolated m+(x,0)
    double kappa = 0.0;
    double kappa_imag = 0.0;
    double c0 = 0.0;
    double c0_imag = 0.0;

    bool nongeneric() const { return classification == Classification::nongeneric; }
    double unitarity_defect() const;    // max over nodes and both sides
    double conjugation_defect() const;  // max |T(-xi) - conj T(xi)| etc.
};

// Four nodes nearest zero, even extrapolation in xi^2 to xi = 0.
// f holds values at nodes n/2-2, n/2-1, n/2, n/2+1 in that order.
cd extrapolate_to_zero(const cd f[4]);

// phi_columns: m+(.,xi) at the four nodes nearest zero (n/2-2 .. n/2+1)
ScatteringData scattering_data(const JostCenter& center, const SpatialGrid& grid, const FrequencyGrid& fgrid,
                               const Eigen::MatrixXcd& phi_columns);
ScatteringData scattering_data(const JostTable& jost);

struct BoundState {
    double energy = 0.0;
    std::vector<double> psi;
};

// Negative eigenvalues of the central-difference operator with Dirichlet ends,
// eigenvectors polished on the five-point fourth-order operator.
std::vector<BoundState> bound_states(const std::vector<double>& V, const SpatialGrid& grid, bool polish = true);

}  // namespace kgscat
