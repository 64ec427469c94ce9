#include <doctest.h>

#include <cmath>
#include <vector>

#include "ecm/euler.hpp"
#include "ecm/families.hpp"
#include "ecm/orthogonality.hpp"

using namespace ecm;
using namespace ecm::euler;

namespace {

families::FamilySpec all_spec() {
    families::FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 1e6;
    return s;
}

families::FamilySpec pr_spec() {
    families::FamilySpec s;
    s.variant = families::Variant::PositiveRank;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 1e6;
    return s;
}

// local Dirichlet factor from the exact prime-power averages
double local_series_k1(i64 p, int emax) {
    double h = 1.0, delta = 1.0 / (1.0 - std::pow(static_cast<double>(p), -10.0));
    for (int e = 2; e <= emax; e += 2) {
        std::vector<int> ee{e};
        h += delta * orthogonality::qstar_closed(p, ee).value.to_double() *
             std::pow(static_cast<double>(p), -e / 2.0);
    }
    return h;
}

double local_series_k2(i64 p, int fmax) {
    double h = 1.0, delta = 1.0 / (1.0 - std::pow(static_cast<double>(p), -10.0));
    for (int e1 = 0; e1 <= fmax; ++e1)
        for (int e2 = 0; e1 + e2 <= fmax; ++e2) {
            int f = e1 + e2;
            if (f == 0 || f % 2 == 1) continue;
            std::vector<int> ee{e1, e2};
            h += delta * orthogonality::qstar_closed(p, ee).value.to_double() *
                 std::pow(static_cast<double>(p), -f / 2.0);
        }
    return h;
}

}  // namespace

TEST_SUITE_BEGIN("euler");

TEST_CASE("k = 0 normalization of the local factors and the product") {
    for (i64 p : {5LL, 11LL, 101LL}) {
        CHECK(h_local_real_k(p, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ak_local(p, 0.0, all_spec()) == doctest::Approx(1.0).epsilon(1e-12));
    }
    auto a0 = ak(0.0, all_spec(), 2000);
    CHECK(a0.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(a0.tail_estimate < 1e-6);
    // the product extends into the continuation region and to k = 3
    double am = ak(-0.25, all_spec(), 500).value;
    CHECK(am > 0.0);
    CHECK(std::isfinite(am));
    CHECK(std::isfinite(ak(3.0, all_spec(), 300).value));
    CHECK_THROWS_AS(ak(-0.5, all_spec(), 100), OutsideRegion);
}

TEST_CASE("dual-path locals: quadrature closed form vs exact dirichlet series") {
    for (i64 p : {5LL, 7LL, 11LL}) {
        int emax = (p == 5) ? 34 : 24;
        CHECK(h_local_real_k(p, 1.0) ==
              doctest::Approx(local_series_k1(p, emax)).epsilon(1e-9));
    }
    CHECK(h_local_real_k(5, 2.0) == doctest::Approx(local_series_k2(5, 30)).epsilon(1e-9));
    CHECK(h_local_real_k(7, 2.0) == doctest::Approx(local_series_k2(7, 22)).epsilon(1e-9));
    CHECK(h_local_real_k(11, 2.0) == doctest::Approx(local_series_k2(11, 18)).epsilon(1e-9));
    // shifted evaluation agrees with the real-k path at integer k
    std::vector<double> z1{0.0};
    CHECK(h_local_shifted(7, z1) == doctest::Approx(h_local_real_k(7, 1.0)).epsilon(1e-11));
}

TEST_CASE("local factors approach 1 at the zeta-removed rate") {
    for (double k : {1.0, 2.0}) {
        double cap = 0.0;
        for (i64 p : arith::primes_up_to(2000)) {
            if (p <= 5) continue;
            double dev = std::abs(ak_local(p, k, all_spec()) - 1.0) *
                         static_cast<double>(p) * static_cast<double>(p);
            cap = std::max(cap, dev);
        }
        CHECK(cap < 50.0);
    }
}

TEST_CASE("zeta bookkeeping: shifted product is finite and continuous at 0") {
    auto spec = all_spec();
    std::vector<double> z0{0.0, 0.0};
    double at0 = a_shifted(z0, spec, 600);
    CHECK(at0 == doctest::Approx(ak(2.0, spec, 600).value).epsilon(1e-10));
    double prev_gap = 1e9;
    for (double eps : {3e-2, 1e-2, 3e-3}) {
        std::vector<double> z{eps, eps};
        double gap = std::abs(a_shifted(z, spec, 600) - at0);
        CHECK(gap < prev_gap + 1e-12);
        prev_gap = gap;
    }
    CHECK(prev_gap < 2e-2);
}

TEST_CASE("tail estimates are self-consistent under pmax doubling") {
    auto spec = all_spec();
    for (double k : {1.0, 2.0}) {
        auto a_lo = ak(k, spec, 1000);
        auto a_hi = ak(k, spec, 2000);
        CHECK(std::abs(a_hi.value - a_lo.value) <= 3.0 * a_lo.tail_estimate + 1e-12);
    }
    // 4-digit stability for a_1 between pmax 10^3 and 10^4
    auto a1lo = ak(1.0, spec, 1000);
    auto a1hi = ak(1.0, spec, 10000);
    CHECK(std::abs(a1hi.value - a1lo.value) / std::abs(a1hi.value) < 5e-5);
}

TEST_CASE("positive-rank local factors") {
    // k = 0 is the empty moment
    CHECK(aprime_local(5, 0, 8) == doctest::Approx(1.0).epsilon(1e-14));
    // shells below the tolerance are accepted; shallow shells throw
    CHECK_THROWS_AS(aprime_local(5, 1, 8), TruncationWarning);
    // deviation from 1 decays like p^{-2}
    double d5 = std::abs(aprime_local(5, 1, 36) - 1.0);
    double d7 = std::abs(aprime_local(7, 1, 30) - 1.0);
    double d11 = std::abs(aprime_local(11, 1, 26) - 1.0);
    CHECK(d5 < 4.0 / 25.0);
    CHECK(d7 < 4.0 / 49.0);
    CHECK(d11 < 4.0 / 121.0);
    CHECK(d7 / d5 < 1.2 * 25.0 / 49.0 + 0.2);
    CHECK(d11 / d7 < 1.2 * 49.0 / 121.0 + 0.2);
}

TEST_CASE("positive-rank first-moment euler product") {
    auto spec = pr_spec();
    // consistency at the central point with the aprime-local product
    auto v0 = a1prime(0.0, 300, spec);
    double prod = 2.0;  // p = 2 factor: 1/(1 - 1/2)
    {
        double h3 = 1.0 / (1.0 + 1.0 / 3.0);  // lambda_3 = 0 for this class
        prod *= h3 / (1.0 - 1.0 / 3.0);
        for (i64 p : arith::primes_up_to(300)) {
            if (p <= 3) continue;
            prod *= aprime_local(p, 1, euler::aprime_default_emax(p));
        }
    }
    CHECK(v0.value == doctest::Approx(prod).epsilon(1e-12));

    CHECK_THROWS_AS(a1prime(-0.16, 200, spec), OutsideRegion);

    // stability between pmax 10^3 and 10^4 at alpha = 0.3; the local factors
    // carry a genuine p^{-2-alpha} term, so the drift sits at the 1e-5 scale
    auto lo = a1prime(0.3, 1000, spec);
    auto hi = a1prime(0.3, 10000, spec);
    CHECK(std::abs(hi.value - lo.value) / std::abs(hi.value) < 3e-5);
    CHECK(std::abs(hi.value - lo.value) <= 3.0 * lo.tail_estimate + 1e-12);

    // slower convergence near the edge of the region, visible in the tail
    auto edge = a1prime(-0.15, 1000, spec);
    CHECK(edge.tail_estimate > hi.tail_estimate);
}

TEST_SUITE_END();
