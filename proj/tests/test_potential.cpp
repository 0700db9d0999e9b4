#include <cmath>
#include <numbers>

#include <doctest.h>

#include "kgscat/potential.hpp"

using namespace kgscat;

TEST_CASE("profile values and derivatives") {
    const auto pt = Profile::poeschl_teller();
    CHECK(pt(0.0) == doctest::Approx(-2.0));
    CHECK(pt(0.0, 1) == doctest::Approx(0.0));
    const double x = 0.7, h = 1e-4;
    for (const auto& p : {pt, Profile::gaussian_well(-1.0, 1.3), Profile::sech_tanh(0.5, 2.0)}) {
        for (int d = 0; d < 3; ++d) {
            const double fd = (p(x + h, d) - p(x - h, d)) / (2 * h);
            CHECK(p(x, d + 1) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    const SpatialGrid g(10.0, 101);
    for (double v : Profile::free().eval(g)) CHECK(v == 0.0);
    CHECK(Profile::free().is_zero());
    CHECK_FALSE(pt.is_zero());
}

TEST_CASE("moment norms and the bound-state count bound") {
    const SpatialGrid g(40.0, 4001);
    CHECK(moment_norm(Profile::free(), 9, 0, g) == 0.0);
    CHECK(moment_norm(Profile::poeschl_teller(), 0, 0, g) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(moment_norm(Profile::gaussian_well(-1.0, 1.0), 0, 0, g) ==
          doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-8));
    CHECK(bound_state_count_bound(Profile::free(), g) == 1);
    CHECK(bound_state_count_bound(Profile::poeschl_teller(), g) == 4);
    CHECK(bound_state_count_bound(Profile::gaussian_well(-1.0, 1.0), g) == 2);
}

TEST_CASE("sampled profiles interpolate and vanish outside") {
    const SpatialGrid g(10.0, 401);
    const auto ref = Profile::sech_squared(-1.5, 1.0);
    const auto s = Profile::sampled(g, ref.eval(g));
    CHECK(s(0.3) == doctest::Approx(ref(0.3)).epsilon(1e-5));
    CHECK(s(0.3, 1) == doctest::Approx(ref(0.3, 1)).epsilon(5e-3));  // second-order differences
    CHECK(s(12.0) == 0.0);
    CHECK_THROWS(Profile::sampled(g, std::vector<double>(5, 0.0)));
}

TEST_CASE("kind names round trip") {
    for (auto k : {ProfileKind::free, ProfileKind::poeschl_teller, ProfileKind::gaussian_well,
                   ProfileKind::sech_squared, ProfileKind::sech_tanh})
        CHECK(profile_kind_from_string(to_string(k)) == k);
    CHECK(profile_kind_from_string("zero") == ProfileKind::free);
    CHECK_THROWS(profile_kind_from_string("square_well"));
}
