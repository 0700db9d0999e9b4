#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgscat/grid.hpp"
#include "kgscat/potential.hpp"
#include "kgscat/spectral.hpp"

namespace kgscat {

inline double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

// e(x, xi) on the product grid plus the scattering data and bound states that
// define P_c. Columns: xi > 0 from T f+, xi < 0 from T(|xi|) f-(., |xi|).
class DistortedBasis {
public:
    static DistortedBasis build(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid);
    static DistortedBasis assemble(const SpatialGrid& grid, const FrequencyGrid& fgrid, std::vector<double> V,
                                   Eigen::MatrixXcd e, ScatteringData sdata, std::vector<BoundState> bound);

    const SpatialGrid& grid() const { return grid_; }
    const FrequencyGrid& fgrid() const { return fgrid_; }
    const Eigen::MatrixXcd& e() const { return e_; }
    const ScatteringData& scattering() const { return sdata_; }
    const std::vector<BoundState>& bound_states() const { return bound_; }
    const std::vector<double>& potential() const { return V_; }
    const Eigen::VectorXd& x_weights() const { return wx_; }
    double xi_weight() const { return fgrid_.d(); }

    Eigen::VectorXcd forward(const Eigen::VectorXcd& g) const;
    Eigen::VectorXcd inverse(const Eigen::VectorXcd& gt) const;
    Eigen::VectorXcd project_continuous(const Eigen::VectorXcd& g) const;

    // e(x, .) at any real x: cubic interpolation of table rows inside [-L, L],
    // closed-form free waves with T, R+- outside (V is taken to vanish there)
    Eigen::RowVectorXcd row_at(double x) const;
    // inverse transform evaluated at arbitrary points
    Eigen::VectorXcd evaluate(const Eigen::VectorXcd& gt, const std::vector<double>& xs) const;

private:
    SpatialGrid grid_;
    FrequencyGrid fgrid_;
    std::vector<double> V_;
    Eigen::MatrixXcd e_;
    Eigen::VectorXd wx_;
    ScatteringData sdata_;
    std::vector<BoundState> bound_;
};

Eigen::VectorXcd forward(const DistortedBasis& b, const Eigen::VectorXcd& g);
Eigen::VectorXcd inverse(const DistortedBasis& b, const Eigen::VectorXcd& gt);
Eigen::VectorXcd project_continuous(const DistortedBasis& b, const Eigen::VectorXcd& g);
double plancherel_defect(const DistortedBasis& b, const Eigen::VectorXcd& g);

using Multiplier = std::function<cd(double)>;
Eigen::VectorXcd apply_multiplier(const DistortedBasis& b, const Eigen::VectorXcd& gt, const Multiplier& omega);

namespace multipliers {
Multiplier one();
Multiplier japanese_power(double nu);  // <xi>^nu
Multiplier abs_xi();                   // sqrt(H)
Multiplier half_wave(double t);        // e^{it<xi>}
}  // namespace multipliers

// L2 norms with the grids' quadrature weights
double norm_x(const DistortedBasis& b, const Eigen::VectorXcd& g);
double norm_xi(const DistortedBasis& b, const Eigen::VectorXcd& gt);
// <f, g> = sum w conj(f) g
cd inner_x(const DistortedBasis& b, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

// Sample a real function on the spatial grid as a complex vector.
Eigen::VectorXcd sample(const SpatialGrid& grid, const std::function<cd(double)>& f);

// Cubic interpolation of frequency samples at arbitrary xi
cd interpolate_xi(const FrequencyGrid& fgrid, const Eigen::VectorXcd& gt, double xi);

// Little-endian container: magic, version, dims, grid metadata, row-major
// complex doubles for e, then scattering data, potential samples and bound states.
void save_basis(const DistortedBasis& b, const std::string& path);
DistortedBasis load_basis(const std::string& path);

}  // namespace kgscat
