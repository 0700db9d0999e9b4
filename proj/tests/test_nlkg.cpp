#include <cmath>

#include <doctest.h>

#include "kgscat/errors.hpp"
#include "kgscat/nlkg.hpp"
#include "kgscat/propagator.hpp"

using namespace kgscat;

namespace {
const SpatialGrid kGrid(30.0, 601);
const FrequencyGrid kFreq(8.0, 512);
const DistortedBasis& pt_basis() {
    static const DistortedBasis b = DistortedBasis::build(Profile::poeschl_teller(), kGrid, kFreq);
    return b;
}
Eigen::VectorXcd odd(double eps) {
    return sample(kGrid, [eps](double x) { return cd(eps * x * std::exp(-x * x / 4)); });
}
Eigen::VectorXcd even(double eps) {
    return sample(kGrid, [eps](double x) { return cd(eps * std::exp(-x * x / 4)); });
}
NlkgOptions short_run(double t_max) {
    NlkgOptions o;
    o.t_max = t_max;
    return o;
}
}  // namespace

TEST_CASE("integrator argument checks") {
    const auto& b = pt_basis();
    const std::vector<double> zero(kGrid.n, 0.0);
    NlkgOptions o = short_run(1.0);
    o.dt = 0.2;
    CHECK_THROWS_AS(integrate(b, zero, odd(0.05), o), std::invalid_argument);
    o.dt = 0.1;
    o.t_max = 1.05;
    CHECK_THROWS_AS(integrate(b, zero, odd(0.05), o), std::invalid_argument);
}

TEST_CASE("alpha = 0 reproduces the linear flow and a0 = <phi, v0>") {
    const auto& b = pt_basis();
    const std::vector<double> zero(kGrid.n, 0.0);
    const Trajectory tr = integrate(b, zero, odd(0.05), short_run(30.0));
    const Eigen::VectorXcd lin = evolve_linear(b, tr.v0, 7.0);
    const Eigen::VectorXcd& v = tr.v[tr.step_index(7.0)];
    CHECK((v - lin.segment(static_cast<Eigen::Index>(tr.row_lo), v.size())).cwiseAbs().maxCoeff() < 1e-12);
    const A0Estimate a0 = extract_a0(tr, b.scattering());
    CHECK(std::abs(a0.direct - tr.phi_v0) < 1e-12);
    const Trajectory te = integrate(b, zero, even(0.05), short_run(5.0));
    // phi is odd only to its extrapolation accuracy
    CHECK(std::abs(coefficient_a(te, b.scattering(), 3.0)) < 1e-8);
}

TEST_CASE("even data with even alpha keep a0 = 0") {
    const auto& b = pt_basis();
    const Trajectory tr = integrate(b, Profile::sech_squared(1.0, 1.0).eval(kGrid), even(0.05), short_run(30.0));
    const A0Estimate a0 = extract_a0(tr, b.scattering());
    CHECK(std::abs(a0.direct) < 1e-8);
}

TEST_CASE("integrator guard trips on blow-up") {
    const auto& b = pt_basis();
    CHECK_THROWS_AS(integrate(b, Profile::sech_squared(1.0, 1.0).eval(kGrid), even(40.0), short_run(20.0)),
                    IntegratorGuard);
}

TEST_CASE("resonance values") {
    const auto& b = pt_basis();
    const ResonanceValues zero = resonance_values(b, std::vector<double>(kGrid.n, 0.0));
    CHECK(zero.plus == cd(0.0));
    CHECK(zero.minus == cd(0.0));
    const ResonanceValues sg = resonance_values(b, Profile::sech_tanh(1.0, 1.0).eval(kGrid));
    CHECK(std::max(std::abs(sg.plus), std::abs(sg.minus)) <= 1e-4 * sg.peak);
    CHECK_FALSE(sg.resonant(kResonanceThreshold));
    const ResonanceValues s2 = resonance_values(b, Profile::sech_squared(1.0, 1.0).eval(kGrid));
    CHECK(std::max(std::abs(s2.plus), std::abs(s2.minus)) > 0.05 * s2.peak);
    CHECK(s2.resonant(kResonanceThreshold));
}

TEST_CASE("v_mod trivial cases") {
    const auto& b = pt_basis();
    const auto Y = Profile::sech_squared(1.0, 1.0).eval(kGrid);
    CHECK(std::abs(v_mod_eval_point(b, Y, cd(0.3), 1.0, 2.0)) == 0.0);
    CHECK(std::abs(v_mod_eval_point(b, Y, cd(0.0), 40.0, 2.0)) == 0.0);
    VModStream s(b, Y, cd(0.3));
    s.frequency(5.0);
    CHECK_THROWS(s.frequency(4.0));
    CHECK(predicted_amplitude(2.0, cd(0.0, 1.0), cd(3.0, 4.0)) == doctest::Approx(4.0 * 5.0 / std::sqrt(8.0)));
}

TEST_CASE("integer times") {
    const auto t = integer_times(10, 200, 40);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
    for (double s : t) CHECK(s == std::round(s));
    CHECK(t.front() == 10.0);
    CHECK(t.back() == 200.0);
}
