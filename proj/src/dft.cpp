#include "kgscat/dft.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace kgscat {

namespace {

constexpr cd I(0.0, 1.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// four-point Lagrange weights for position u in [0,3] relative to the first node
void cubic_weights(double u, double w[4]) {
    w[0] = -(u - 1) * (u - 2) * (u - 3) / 6.0;
    w[1] = u * (u - 2) * (u - 3) / 2.0;
    w[2] = -u * (u - 1) * (u - 3) / 2.0;
    w[3] = u * (u - 1) * (u - 2) / 6.0;
}

// first node of the stencil and the weights for fractional index s
std::size_t stencil(double s, std::size_t n, double w[4]) {
    long j = static_cast<long>(std::floor(s)) - 1;
    j = std::clamp(j, 0L, static_cast<long>(n) - 4);
    cubic_weights(s - static_cast<double>(j), w);
    return static_cast<std::size_t>(j);
}

}  // namespace

DistortedBasis DistortedBasis::build(const Profile& V, const SpatialGrid& grid, const FrequencyGrid& fgrid) {
    const JostSolver solver(V, grid);
    const std::size_t nx = grid.n, nk = fgrid.n, half = nk / 2;
    JostCenter c;
    c.mp.resize(nk);
    c.dmp.resize(nk);
    c.mm.resize(nk);
    c.dmm.resize(nk);
    Eigen::MatrixXcd e(nx, nk);
    Eigen::MatrixXcd phi_cols(nx, 4);
    std::vector<cd> m(nx), dm(nx);
    const std::size_t ic = grid.center();
    for (std::size_t k = 0; k < nk; ++k) {
        const double xi = fgrid.xi(k);
        solver.column(xi, Side::plus, m.data(), dm.data());
        c.mp[k] = m[ic];
        c.dmp[k] = dm[ic];
        if (k >= half) {
            for (std::size_t i = 0; i < nx; ++i) e(i, k) = std::polar(1.0, grid.x(i) * xi) * m[i];
        }
        if (k + 2 >= half && k < half + 2)
            for (std::size_t i = 0; i < nx; ++i) phi_cols(i, k + 2 - half) = m[i];
        solver.column(xi, Side::minus, m.data(), dm.data());
        c.mm[k] = m[ic];
        c.dmm[k] = dm[ic];
        if (k >= half) {
            const std::size_t j = fgrid.mirror(k);
            for (std::size_t i = 0; i < nx; ++i) e(i, j) = std::polar(1.0, -grid.x(i) * xi) * m[i];
        }
    }
    ScatteringData s = scattering_data(c, grid, fgrid, phi_cols);
    for (std::size_t k = half; k < nk; ++k) {
        e.col(k) *= s.T[k] * kInvSqrt2Pi;
        e.col(fgrid.mirror(k)) *= s.T[k] * kInvSqrt2Pi;
    }
    auto Vs = V.eval(grid, 0);
    auto bound = kgscat::bound_states(Vs, grid);
    return assemble(grid, fgrid, std::move(Vs), std::move(e), std::move(s), std::move(bound));
}

DistortedBasis DistortedBasis::assemble(const SpatialGrid& grid, const FrequencyGrid& fgrid, std::vector<double> V,
                                        Eigen::MatrixXcd e, ScatteringData sdata, std::vector<BoundState> bound) {
    if (e.rows() != static_cast<Eigen::Index>(grid.n) || e.cols() != static_cast<Eigen::Index>(fgrid.n))
        throw std::invalid_argument("basis: matrix shape does not match grids");
    DistortedBasis b;
    b.grid_ = grid;
    b.fgrid_ = fgrid;
    b.V_ = std::move(V);
    b.e_ = std::move(e);
    b.sdata_ = std::move(sdata);
    b.bound_ = std::move(bound);
    const auto w = grid.weights();
    b.wx_ = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    return b;
}

Eigen::VectorXcd DistortedBasis::forward(const Eigen::VectorXcd& g) const {
    if (g.size() != e_.rows()) throw std::invalid_argument("forward: sample count does not match grid");
    const Eigen::VectorXcd wg = g.cwiseProduct(wx_.cast<cd>());
    return e_.adjoint() * wg;
}

Eigen::VectorXcd DistortedBasis::inverse(const Eigen::VectorXcd& gt) const {
    if (gt.size() != e_.cols()) throw std::invalid_argument("inverse: sample count does not match frequency grid");
    return e_ * (gt * fgrid_.d());
}

Eigen::VectorXcd DistortedBasis::project_continuous(const Eigen::VectorXcd& g) const {
    Eigen::VectorXcd out = g;
    for (const auto& b : bound_) {
        const Eigen::Map<const Eigen::VectorXd> Y(b.psi.data(), static_cast<Eigen::Index>(b.psi.size()));
        const cd c = (Y.cwiseProduct(wx_)).cast<cd>().dot(g);
        out -= c * Y.cast<cd>();
    }
    return out;
}

Eigen::RowVectorXcd DistortedBasis::row_at(double x) const {
    const std::size_t nk = fgrid_.n, half = nk / 2;
    const double L = grid_.L;
    Eigen::RowVectorXcd r(nk);
    if (x >= -L && x <= L) {
        double w[4];
        const std::size_t j = stencil((x + L) / grid_.h(), grid_.n, w);
        r = w[0] * e_.row(j) + w[1] * e_.row(j + 1) + w[2] * e_.row(j + 2) + w[3] * e_.row(j + 3);
        return r;
    }
    for (std::size_t k = 0; k < nk; ++k) {
        const double xi = fgrid_.xi(k);
        const std::size_t kp = k >= half ? k : fgrid_.mirror(k);  // node of |xi|
        const cd wave = std::polar(1.0, x * xi);
        if (x > L)
            r[k] = (k >= half ? sdata_.T[kp] * wave : wave + sdata_.R_plus[kp] * std::conj(wave)) * kInvSqrt2Pi;
        else
            r[k] = (k >= half ? wave + sdata_.R_minus[kp] * std::conj(wave) : sdata_.T[kp] * wave) * kInvSqrt2Pi;
    }
    return r;
}

Eigen::VectorXcd DistortedBasis::evaluate(const Eigen::VectorXcd& gt, const std::vector<double>& xs) const {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(xs.size()));
    const Eigen::VectorXcd q = gt * fgrid_.d();
    for (std::size_t i = 0; i < xs.size(); ++i) out[static_cast<Eigen::Index>(i)] = row_at(xs[i]) * q;
    return out;
}

Eigen::VectorXcd forward(const DistortedBasis& b, const Eigen::VectorXcd& g) { return b.forward(g); }
Eigen::VectorXcd inverse(const DistortedBasis& b, const Eigen::VectorXcd& gt) { return b.inverse(gt); }
Eigen::VectorXcd project_continuous(const DistortedBasis& b, const Eigen::VectorXcd& g) {
    return b.project_continuous(g);
}

double norm_x(const DistortedBasis& b, const Eigen::VectorXcd& g) {
    return std::sqrt((g.cwiseAbs2().cwiseProduct(b.x_weights())).sum());
}

double norm_xi(const DistortedBasis& b, const Eigen::VectorXcd& gt) { return std::sqrt(gt.squaredNorm() * b.xi_weight()); }

cd inner_x(const DistortedBasis& b, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    return f.dot(g.cwiseProduct(b.x_weights().cast<cd>()));
}

double plancherel_defect(const DistortedBasis& b, const Eigen::VectorXcd& g) {
    return std::abs(norm_xi(b, b.forward(g)) - norm_x(b, b.project_continuous(g)));
}

Eigen::VectorXcd apply_multiplier(const DistortedBasis& b, const Eigen::VectorXcd& gt, const Multiplier& omega) {
    const auto& fg = b.fgrid();
    if (gt.size() != static_cast<Eigen::Index>(fg.n)) throw std::invalid_argument("apply_multiplier: size mismatch");
    Eigen::VectorXcd out(gt.size());
    for (std::size_t k = 0; k < fg.n; ++k) {
        const cd w = omega(fg.xi(k));
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
            throw std::domain_error("multiplier is not finite at xi = " + std::to_string(fg.xi(k)));
        out[static_cast<Eigen::Index>(k)] = w * gt[static_cast<Eigen::Index>(k)];
    }
    return out;
}

namespace multipliers {
Multiplier one() {
    return [](double) { return cd(1.0); };
}
Multiplier japanese_power(double nu) {
    return [nu](double xi) { return cd(std::pow(1.0 + xi * xi, 0.5 * nu)); };
}
Multiplier abs_xi() {
    return [](double xi) { return cd(std::abs(xi)); };
}
Multiplier half_wave(double t) {
    return [t](double xi) { return std::polar(1.0, t * japanese(xi)); };
}
}  // namespace multipliers

Eigen::VectorXcd sample(const SpatialGrid& grid, const std::function<cd(double)>& f) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.n));
    for (std::size_t i = 0; i < grid.n; ++i) out[static_cast<Eigen::Index>(i)] = f(grid.x(i));
    return out;
}

cd interpolate_xi(const FrequencyGrid& fgrid, const Eigen::VectorXcd& gt, double xi) {
    if (std::abs(xi) > fgrid.Xi) return 0.0;
    double w[4];
    const std::size_t j = stencil((xi - fgrid.xi(0)) / fgrid.d(), fgrid.n, w);
    cd acc = 0.0;
    for (int q = 0; q < 4; ++q) acc += w[q] * gt[static_cast<Eigen::Index>(j + q)];
    return acc;
}

// ---- binary container ----

namespace {

constexpr char kMagic[8] = {'K', 'G', 'S', 'B', 'A', 'S', 'I', 'S'};
constexpr std::uint32_t kVersion = 1;

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    }
    void u64(std::uint64_t v) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<const char*>(b), 8);
    }
    void u32(std::uint32_t v) {
        unsigned char b[4];
        for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        out_.write(reinterpret_cast<const char*>(b), 4);
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void c128(cd v) {
        f64(v.real());
        f64(v.imag());
    }
    void raw(const char* p, std::size_t n) { out_.write(p, static_cast<std::streamsize>(n)); }
    void finish() {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed");
    }

private:
    std::ofstream out_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
        if (!in_) throw std::runtime_error("cannot open " + path);
    }
    std::uint64_t u64() {
        unsigned char b[8];
        read(b, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::uint32_t u32() {
        unsigned char b[4];
        read(b, 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    cd c128() {
        const double re = f64();
        return {re, f64()};
    }
    void read(unsigned char* p, std::size_t n) {
        in_.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!in_) throw std::runtime_error("basis container truncated");
    }

private:
    std::ifstream in_;
};

void put_vec(Writer& w, const Eigen::VectorXcd& v) {
    w.u64(static_cast<std::uint64_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) w.c128(v[i]);
}

Eigen::VectorXcd get_vec(Reader& r) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(r.u64()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = r.c128();
    return v;
}

void put_real(Writer& w, const std::vector<double>& v) {
    w.u64(v.size());
    for (double x : v) w.f64(x);
}

std::vector<double> get_real(Reader& r) {
    std::vector<double> v(r.u64());
    for (double& x : v) x = r.f64();
    return v;
}

}  // namespace

void save_basis(const DistortedBasis& b, const std::string& path) {
    Writer w(path);
    w.raw(kMagic, 8);
    w.u32(kVersion);
    const auto& g = b.grid();
    const auto& f = b.fgrid();
    w.u64(g.n);
    w.u64(f.n);
    w.f64(g.L);
    w.f64(f.Xi);
    // row-major
    for (Eigen::Index i = 0; i < b.e().rows(); ++i)
        for (Eigen::Index k = 0; k < b.e().cols(); ++k) w.c128(b.e()(i, k));
    const auto& s = b.scattering();
    put_vec(w, s.W);
    put_vec(w, s.T);
    put_vec(w, s.R_plus);
    put_vec(w, s.R_minus);
    w.c128(s.T0);
    w.c128(s.Rm0);
    w.u32(s.nongeneric() ? 1 : 0);
    put_real(w, s.phi);
    w.f64(s.phi_imag_residual);
    w.f64(s.kappa);
    w.f64(s.kappa_imag);
    w.f64(s.c0);
    w.f64(s.c0_imag);
    put_real(w, b.potential());
    w.u64(b.bound_states().size());
    for (const auto& bs : b.bound_states()) {
        w.f64(bs.energy);
        put_real(w, bs.psi);
    }
    w.finish();
}

DistortedBasis load_basis(const std::string& path) {
    Reader r(path);
    unsigned char magic[8];
    r.read(magic, 8);
    if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error(path + ": not a basis container");
    if (const auto v = r.u32(); v != kVersion) throw std::runtime_error(path + ": unsupported version " + std::to_string(v));
    const std::size_t nx = r.u64(), nk = r.u64();
    const double L = r.f64(), Xi = r.f64();
    const SpatialGrid grid(L, nx);
    const FrequencyGrid fgrid(Xi, nk);
    Eigen::MatrixXcd e(nx, nk);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t k = 0; k < nk; ++k) e(i, k) = r.c128();
    ScatteringData s;
    s.grid = grid;
    s.fgrid = fgrid;
    s.W = get_vec(r);
    s.T = get_vec(r);
    s.R_plus = get_vec(r);
    s.R_minus = get_vec(r);
    s.T0 = r.c128();
    s.Rm0 = r.c128();
    s.classification = r.u32() ? Classification::nongeneric : Classification::generic;
    s.phi = get_real(r);
    s.phi_imag_residual = r.f64();
    s.kappa = r.f64();
    s.kappa_imag = r.f64();
    s.c0 = r.f64();
    s.c0_imag = r.f64();
    auto V = get_real(r);
    std::vector<BoundState> bound(r.u64());
    for (auto& bs : bound) {
        bs.energy = r.f64();
        bs.psi = get_real(r);
    }
    return DistortedBasis::assemble(grid, fgrid, std::move(V), std::move(e), std::move(s), std::move(bound));
}

}  // namespace kgscat
