#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecm/chebyshev.hpp"

using namespace ecm;
using namespace ecm::chebyshev;

TEST_SUITE_BEGIN("chebyshev");

TEST_CASE("u_eval basics and the sine-ratio closed form") {
    CHECK(u_eval(0, 0.7) == 1.0);
    CHECK(u_eval(1, 0.3) == doctest::Approx(0.6));
    CHECK(u_eval(2, 0.5) == doctest::Approx(0.0));
    double theta = 0.3;
    CHECK(u_eval(5, std::cos(theta)) ==
          doctest::Approx(std::sin(6.0 * theta) / std::sin(theta)).epsilon(1e-12));
}

TEST_CASE("linearization tables") {
    {
        std::vector<int> e{1, 1};
        auto t = linearize(e);
        CHECK(t.at(0) == 1);
        CHECK(t.at(2) == 1);
        CHECK(t.coeffs.size() == 2);
    }
    {
        std::vector<int> e{7};
        auto t = linearize(e);
        CHECK(t.at(7) == 1);
        CHECK(t.coeffs.size() == 1);
    }
    {
        std::vector<int> e{1, 1, 1};
        auto t = linearize(e);
        CHECK(t.at(1) == 2);
        CHECK(t.at(3) == 1);
        CHECK(t.coeffs.size() == 2);
    }
}

TEST_CASE("linearization structure: parity, degree, positivity, x = 1 sum rule") {
    std::vector<std::vector<int>> cases = {{2, 3}, {4, 4}, {5, 2, 1}, {3, 3, 3}, {6, 4, 2}};
    for (auto& e : cases) {
        auto t = linearize(e);
        long long expect = 1;
        for (int ei : e) expect *= ei + 1;
        long long sum = 0;
        for (auto [l, c] : t.coeffs) {
            CHECK(c > 0);
            CHECK(l <= t.total);
            CHECK((l - t.total) % 2 == 0);
            sum += c * (l + 1);
        }
        CHECK(sum == expect);  // evaluate the identity at x = 1, U_l(1) = l+1
    }
}

TEST_CASE("sato-tate measure normalization and orthonormality") {
    CHECK(sato_tate_integral([](double) { return 1.0; }, 1e-12) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sato_tate_integral(
              [](double th) { return u_eval(2, std::cos(th)); }, 1e-12)) < 1e-10);
    for (int m = 0; m <= 5; ++m)
        for (int n = m; n <= 5; ++n) {
            double v = sato_tate_integral(
                [&](double th) {
                    double c = std::cos(th);
                    return u_eval(m, c) * u_eval(n, c);
                },
                1e-12);
            CHECK(v == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-10));
        }
}

TEST_CASE("linearization coefficients agree with sato-tate quadrature") {
    // all exponent tuples with k <= 3 and f <= 12
    std::vector<std::vector<int>> cases;
    for (int e1 = 0; e1 <= 12; ++e1)
        for (int e2 = e1; e1 + e2 <= 12; ++e2)
            for (int e3 = e2; e1 + e2 + e3 <= 12; ++e3)
                if (e3 > 0) cases.push_back({e1, e2, e3});
    for (auto& e : cases) {
        auto t = linearize(e);
        for (int l = (t.total % 2); l <= t.total; l += 4) {  // sampled l's
            double q = sato_tate_integral(
                [&](double th) {
                    double c = std::cos(th);
                    double prod = u_eval(l, c);
                    for (int ei : e) prod *= u_eval(ei, c);
                    return prod;
                },
                1e-11);
            CHECK(q == doctest::Approx(static_cast<double>(t.at(l))).epsilon(1e-9));
        }
    }
}

TEST_CASE("generating series identities") {
    // sum U_n(x) t^n = 1/(1 - 2xt + t^2)
    for (int i = 0; i < 20; ++i) {
        double x = -0.95 + 0.1 * i;
        for (double t : {0.5, -0.5, 0.25}) {
            double s = 0.0, tp = 1.0;
            for (int n = 0; n <= 120; ++n) {
                s += u_eval(n, x) * tp;
                tp *= t;
            }
            CHECK(s == doctest::Approx(1.0 / (1.0 - 2.0 * x * t + t * t)).epsilon(1e-12));
        }
    }
    // even-index sum examples
    CHECK(even_index_sum(0.77, 0.0) == 1.0);
    {
        double direct = 0.0;
        for (int n = 0; n <= 60; ++n) direct += (2.0 * n + 1.0) * std::pow(0.25, n);
        CHECK(even_index_sum(1.0, 0.5) == doctest::Approx(direct).epsilon(1e-12));
    }
    {
        double direct = 0.0, t = 1.0 / 3.0;
        for (int n = 0; n <= 50; ++n) direct += u_eval(2 * n, 0.0) * std::pow(t, 2 * n);
        CHECK(even_index_sum(0.0, t) == doctest::Approx(direct).epsilon(1e-12));
    }
    CHECK_THROWS_AS(even_index_sum(0.3, 1.0), DivergentRegion);
}

TEST_SUITE_END();
