#include <cmath>
#include <cstdio>
#include <filesystem>

#include <doctest.h>

#include "kgscat/dft.hpp"
#include "kgscat/oracle.hpp"

using namespace kgscat;

namespace {
const SpatialGrid kGrid(30.0, 1201);
const FrequencyGrid kFreq(10.0, 1024);

const DistortedBasis& pt_basis() {
    static const DistortedBasis b = DistortedBasis::build(Profile::poeschl_teller(), kGrid, kFreq);
    return b;
}
const DistortedBasis& free_basis() {
    static const DistortedBasis b = DistortedBasis::build(Profile::free(), kGrid, kFreq);
    return b;
}
Eigen::VectorXcd gauss() { return sample(kGrid, [](double x) { return cd(std::exp(-x * x)); }); }
}  // namespace

TEST_CASE("free transform of a Gaussian") {
    const Eigen::VectorXcd gt = free_basis().forward(gauss());
    for (std::size_t k = 0; k < kFreq.n; k += 37)
        CHECK(std::abs(gt[static_cast<Eigen::Index>(k)] - oracle::gaussian_transform(kFreq.xi(k))) < 1e-10);
    CHECK((free_basis().inverse(gt) - gauss()).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(plancherel_defect(free_basis(), gauss()) < 1e-8);
    CHECK(free_basis().forward(Eigen::VectorXcd::Zero(kGrid.n)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Poeschl-Teller basis matches the closed form") {
    const auto& b = pt_basis();
    double worst = 0.0;
    for (std::size_t k = 0; k < kFreq.n; k += 29)
        for (std::size_t i = 0; i < kGrid.n; i += 31)
            worst = std::max(worst, std::abs(b.e()(i, k) - oracle::pt_basis(kGrid.x(i), kFreq.xi(k))));
    CHECK(worst < 1e-5);
}

TEST_CASE("bound states are projected out") {
    const auto& b = pt_basis();
    const Eigen::VectorXcd psi = sample(kGrid, [](double x) { return cd(oracle::pt_ground_state(x)); });
    CHECK(b.forward(psi).cwiseAbs().maxCoeff() < 1e-4);
    const auto& bs = b.bound_states()[0].psi;
    const Eigen::VectorXcd own = sample(kGrid, [&](double x) { return cd(bs[static_cast<std::size_t>(std::lround((x + kGrid.L) / kGrid.h()))]); });
    CHECK(norm_x(b, b.project_continuous(own)) < 1e-8);
    const Eigen::VectorXcd g = sample(kGrid, [](double x) { return cd(1.0 / std::cosh(x)); });
    const Eigen::VectorXcd rt = b.inverse(b.forward(g + psi));
    CHECK(norm_x(b, rt - b.project_continuous(g + psi)) < 1e-5);
    CHECK((free_basis().project_continuous(g) - g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multipliers") {
    const auto& b = pt_basis();
    const Eigen::VectorXcd gt = b.forward(gauss());
    CHECK((apply_multiplier(b, gt, multipliers::one()) - gt).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(multipliers::japanese_power(1.0)(std::sqrt(3.0)) - 2.0) < 1e-15);
    CHECK_THROWS(apply_multiplier(b, gt, [](double) { return cd(NAN); }));
    // xi^2 on the transform equals H P_c g by differences
    const Eigen::VectorXcd hg = b.inverse(apply_multiplier(b, gt, [](double xi) { return cd(xi * xi); }));
    const Eigen::VectorXcd pc = b.project_continuous(gauss());
    const double h = kGrid.h();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < kGrid.n; ++i) {
        const cd lap = (pc[i + 1] - 2.0 * pc[i] + pc[i - 1]) / (h * h);
        worst = std::max(worst, std::abs(-lap + b.potential()[i] * pc[i] - hg[i]));
    }
    CHECK(worst < 5e-3);
}

TEST_CASE("row_at interpolates inside and continues outside") {
    const auto& b = pt_basis();
    const Eigen::RowVectorXcd r = b.row_at(kGrid.x(700));
    CHECK((r - b.e().row(700)).cwiseAbs().maxCoeff() < 1e-12);
    const double x = 95.3;
    const Eigen::RowVectorXcd far = b.row_at(x);
    for (std::size_t k : {std::size_t{100}, std::size_t{800}})
        CHECK(std::abs(far[static_cast<Eigen::Index>(k)] - oracle::pt_basis(x, kFreq.xi(k))) < 1e-5);
    const Eigen::RowVectorXcd edge_in = b.row_at(30.0 - 1e-9), edge_out = b.row_at(30.0 + 1e-9);
    CHECK((edge_in - edge_out).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("basis container round trip") {
    const auto& b = pt_basis();
    const auto path = (std::filesystem::temp_directory_path() / "kgscat_basis_test.bin").string();
    save_basis(b, path);
    const DistortedBasis c = load_basis(path);
    CHECK(c.e() == b.e());
    CHECK(c.scattering().c0 == b.scattering().c0);
    CHECK(c.scattering().phi == b.scattering().phi);
    CHECK(c.bound_states().size() == b.bound_states().size());
    CHECK(c.potential() == b.potential());
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    std::fputc('X', f);
    std::fclose(f);
    CHECK_THROWS(load_basis(path));
    std::filesystem::remove(path);
}

TEST_CASE("frequency interpolation") {
    const auto& b = pt_basis();
    const Eigen::VectorXcd gt = free_basis().forward(gauss());
    CHECK(std::abs(interpolate_xi(kFreq, gt, 0.123) - oracle::gaussian_transform(0.123)) < 1e-8);
    CHECK(interpolate_xi(kFreq, gt, 11.0) == cd(0.0));
    (void)b;
}
