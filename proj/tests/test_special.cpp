#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ecm/special.hpp"

using namespace ecm;
using namespace ecm::special;

TEST_SUITE_BEGIN("special");

TEST_CASE("zeta by euler-maclaurin against closed forms") {
    CHECK(zeta(2) == doctest::Approx(std::numbers::pi * std::numbers::pi / 6).epsilon(1e-14));
    CHECK(zeta(10) == doctest::Approx(std::pow(std::numbers::pi, 10) / 93555.0).epsilon(1e-14));
    CHECK(zeta_partial(10, {2, 3}) ==
          doctest::Approx(zeta(10) * (1 - std::pow(2.0, -10)) * (1 - std::pow(3.0, -10)))
              .epsilon(1e-14));
    CHECK(zeta_partial(7, {2, 3}) ==
          doctest::Approx(zeta(7) * (1 - 1.0 / 128) * (1 - 1.0 / 2187)).epsilon(1e-14));
    CHECK_THROWS_AS(zeta(1.0), Error);
}

TEST_CASE("stieltjes expansion of zeta(1+z)") {
    auto g = zeta_laurent(6);
    // classical values
    CHECK(g[0] == doctest::Approx(0.5772156649015329).epsilon(1e-12));
    CHECK(g[1] == doctest::Approx(-0.0728158454836767).epsilon(1e-10));
    CHECK(g[2] == doctest::Approx(-0.00969036319287).epsilon(1e-8));
    // residue check: z zeta(1+z) -> 1 as z -> 0; the truncated expansion of
    // z zeta(1+z) matches direct evaluation on the right of the pole
    for (double z : {1e-2, 5e-2, 0.2}) {
        double expansion = 1.0, zpow = z, f = 1.0;
        for (int n = 0; n <= 6; ++n) {
            if (n > 0) f *= n;
            expansion += ((n % 2 == 0) ? 1.0 : -1.0) * g[n] * zpow / f;
            zpow *= z;
        }
        CHECK(expansion == doctest::Approx(zeta(1.0 + z) * z).epsilon(1e-10));
    }
    CHECK_THROWS_AS(zeta_laurent(7), Error);
}

TEST_CASE("barnes g satisfies the gamma recurrence") {
    for (double s = 0.6; s <= 20.0; s += 0.7) {
        double lhs = log_barnes_g(s + 1.0);
        double rhs = std::lgamma(s) + log_barnes_g(s);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
    // integer anchors: G(1) = G(2) = G(3) = 1, G(4) = 2, G(5) = 12
    CHECK(std::abs(log_barnes_g(1.0)) < 1e-12);
    CHECK(std::abs(log_barnes_g(2.0)) < 1e-12);
    CHECK(std::abs(log_barnes_g(3.0)) < 1e-12);
    CHECK(log_barnes_g(4.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(log_barnes_g(5.0) == doctest::Approx(std::log(12.0)).epsilon(1e-12));
}

TEST_CASE("moment constants g_k") {
    CHECK(g_k(0).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g_k(1).value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(g_k(2).value == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(g_k(3).value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK_THROWS_AS(g_k(-0.5), PoleRegion);
    CHECK(g_k(-0.49).value > 0);
    CHECK(g_k(-0.25).value > 0);
    // continuity with the factorial closed form at integers
    for (int k = 0; k <= 8; ++k)
        CHECK(g_k(k).value == doctest::Approx(g_k_factorial(k)).epsilon(1e-9));
}

TEST_SUITE_END();
