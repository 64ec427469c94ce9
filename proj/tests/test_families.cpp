#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "ecm/curves.hpp"
#include "ecm/families.hpp"

using namespace ecm;
using namespace ecm::families;

TEST_SUITE_BEGIN("families");

TEST_CASE("spec validation") {
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 64;
    CHECK_NOTHROW(s.validate());
    s.q = 4;  // not squarefree and even
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
    s.q = 5;
    s.r = 5;
    s.t = 5;  // 4*125 + 27*25 = 1175 = 5^2 * 47 shares 5 with 6q
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
    s = FamilySpec{};
    s.variant = Variant::PositiveRank;
    s.q = 5;
    s.X = 100;
    CHECK_THROWS_AS(s.validate(), InvalidSpec);
}

TEST_CASE("small box membership and ordering") {
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 64;
    auto members = enumerate(s);
    bool has11 = false;
    i64 prev_a = -1000;
    i64 prev_b = 0;
    for (auto& m : members) {
        if (m.curve.a == 1 && m.curve.b == 1) has11 = true;
        CHECK(arith::mod_floor(m.curve.a - 1, 6) == 0);
        CHECK(arith::mod_floor(m.curve.b - 1, 6) == 0);
        CHECK(std::llabs(m.curve.a) <= 4);   // 64^{1/3}
        CHECK(std::llabs(m.curve.b) <= 8);   // 64^{1/2}
        // deterministic order: a ascending, then b ascending
        if (m.curve.a == prev_a) CHECK(m.curve.b > prev_b);
        else CHECK(m.curve.a > prev_a);
        prev_a = m.curve.a;
        prev_b = m.curve.b;
        CHECK(std::gcd(static_cast<i64>(4 * m.curve.a * m.curve.a * m.curve.a +
                                        27 * m.curve.b * m.curve.b),
                       static_cast<i64>(6)) == 1);
    }
    CHECK(has11);
}

TEST_CASE("power condition removes the sieved pairs") {
    // only p >= 5 can trigger the sieve on valid residue classes; the first
    // case is a = 5^4, b = 5^6 which needs X >= 5^12
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 2.5e8;
    bool saw_a625 = false, saw_excluded = false;
    for_each_member(s, [&](const FamilyMember& m) {
        if (m.curve.a == 625) {
            saw_a625 = true;
            if (m.curve.b == 15625) saw_excluded = true;
            CHECK(m.curve.b % 15625 != 0);
        }
    });
    CHECK(saw_a625);
    CHECK(!saw_excluded);
}

TEST_CASE("counts approach the moebius-sieve asymptotics") {
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    double prev_err = 1.0;
    for (double X : {1e4, 1e5, 1e6}) {
        s.X = X;
        double ratio = static_cast<double>(count(s)) / count_asymptotic(s);
        double err = std::abs(ratio - 1.0);
        CHECK(err < 0.12);
        if (X > 1e4) CHECK(err <= prev_err + 0.02);  // broad monotone refinement
        prev_err = err;
    }
    s.X = 1e6;
    CHECK(static_cast<double>(count(s)) / count_asymptotic(s) ==
          doctest::Approx(1.0).epsilon(0.02));

    FamilySpec sp;
    sp.variant = Variant::PositiveRank;
    sp.r = 1;
    sp.t = 1;
    sp.q = 1;
    sp.X = 1e6;
    CHECK(static_cast<double>(count(sp)) / count_asymptotic(sp) ==
          doctest::Approx(1.0).epsilon(0.05));
    // q-scaling of the asymptotic count at fixed X
    FamilySpec q5;
    q5.r = 1;
    q5.t = 1;
    q5.q = 5;
    q5.X = 1e6;
    double zeta_ratio = count_asymptotic(s) / (25.0 * count_asymptotic(q5));
    CHECK(zeta_ratio == doctest::Approx(1.0).epsilon(1e-4));  // up to the zeta factor
}

TEST_CASE("no two enumerated curves are isomorphic") {
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 2000;
    auto members = enumerate(s);
    std::set<std::pair<i64, i64>> seen;
    for (auto& m : members) seen.insert({m.curve.a, m.curve.b});
    for (auto& m : members) {
        for (i64 d = 2; d <= 5; ++d) {
            i64 d4 = d * d * d * d, d6 = d4 * d * d;
            CHECK(!seen.count({m.curve.a * d4, m.curve.b * d6}));
            // a member with d^4 | a and d^6 | b would itself violate the sieve
            CHECK(!(m.curve.a % d4 == 0 && m.curve.b % d6 == 0));
        }
    }
}

TEST_CASE("members are minimal at the odd primes of bad reduction") {
    FamilySpec s;
    s.r = 1;
    s.t = 1;
    s.q = 1;
    s.X = 5000;
    for (auto& m : enumerate(s)) {
        for (auto [p, e] : arith::factorize(std::llabs(m.curve.disc))) {
            (void)e;
            if (p > 3) CHECK(curves::minimal_at(m.curve, p));
        }
    }
}

TEST_CASE("positive-rank members carry the generator and torsion flag") {
    FamilySpec sp;
    sp.variant = Variant::PositiveRank;
    sp.r = 1;
    sp.t = 1;
    sp.q = 1;
    sp.X = 1e5;
    auto members = enumerate(sp);
    CHECK(!members.empty());
    for (auto& m : members) {
        CHECK(m.curve.b == m.gen_b * m.gen_b);
        CHECK(m.torsion_flag == curves::is_torsion_candidate(m.curve.a, m.gen_b));
    }
}

TEST_SUITE_END();
