#include <cmath>
#include <numbers>

#include <doctest.h>

#include "kgscat/oracle.hpp"

using namespace kgscat;
using oracle::cd;

TEST_CASE("closed-form Poeschl-Teller values") {
    CHECK(std::abs(oracle::pt_m(0.0, 1.0, Side::plus) - cd(0.5, -0.5)) < 1e-15);
    CHECK(std::abs(oracle::pt_jost(0.0, 0.0, Side::plus)) < 1e-15);
    CHECK(std::abs(oracle::pt_transmission(0.0) + 1.0) < 1e-15);
    CHECK(std::abs(oracle::pt_transmission(1.0) - cd(0, 1)) < 1e-15);
    CHECK_THROWS(oracle::pt_basis(0.3, 0.0));
    const double xi = 40.0, x = 0.4;
    const cd scaled = oracle::pt_basis(x, xi) * std::sqrt(2 * std::numbers::pi) * std::exp(cd(0, -x * xi));
    CHECK(std::abs(scaled - 1.0) < 0.05);
}

TEST_CASE("closed-form Jost solution solves the ODE") {
    const double xi = 1.3, x = 0.6, h = 1e-3;
    auto f = [&](double y) { return oracle::pt_jost(y, xi, Side::plus); };
    const cd lap = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    const double V = -2.0 / (std::cosh(x) * std::cosh(x));
    CHECK(std::abs(-lap + V * f(x) - xi * xi * f(x)) < 1e-5);
}

TEST_CASE("ground state is normalized") {
    double s = 0.0;
    const double h = 0.01;
    for (double x = -30; x <= 30; x += h) s += h * oracle::pt_ground_state(x) * oracle::pt_ground_state(x);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sine-Gordon transform vanishes, a nearby power does not") {
    const auto [p, m] = oracle::sine_gordon_vanishing_defect(0.01);
    CHECK(std::max(p, m) < 1e-12);
    const auto [p1, m1] = oracle::sine_gordon_vanishing_defect(0.01, 1);
    CHECK(std::max(p1, m1) > 1e-3);
}

TEST_CASE("free evolution oracles agree") {
    const SpatialGrid g(30.0, 601);
    const FrequencyGrid f(10.0, 2048);
    std::vector<cd> d(g.n);
    for (std::size_t i = 0; i < g.n; ++i) d[i] = std::exp(-g.x(i) * g.x(i));
    const auto v = oracle::free_evolution(g, d, 5.0, f);
    for (std::size_t i : {std::size_t{250}, std::size_t{300}, std::size_t{400}})
        CHECK(std::abs(v[i] - oracle::free_evolution_gaussian(g.x(i), 5.0)) < 1e-8);
    CHECK(oracle::gaussian_transform(0.0) == doctest::Approx(std::sqrt(0.5)));
}
