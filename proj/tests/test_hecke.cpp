#include <doctest.h>

#include <cmath>

#include "ecm/arith.hpp"
#include "ecm/hecke.hpp"
#include "ecm/orthogonality.hpp"

using namespace ecm;
using namespace ecm::hecke;

TEST_SUITE_BEGIN("hecke");

TEST_CASE("weighted class numbers at known discriminants") {
    CHECK(class_number_vw(-3).value == mpq_class(1, 3));
    CHECK(class_number_vw(-4).value == mpq_class(1, 2));
    CHECK(class_number_vw(-7).value == 1);
    CHECK(class_number_vw(-8).value == 1);
    CHECK(class_number_vw(-11).value == 1);
    CHECK(class_number_vw(-12).value == mpq_class(4, 3));
    CHECK(class_number_vw(-15).value == 2);
    CHECK(class_number_vw(-16).value == mpq_class(3, 2));
    CHECK(class_number_vw(-19).value == 1);
    CHECK(class_number_vw(-20).value == 2);
    CHECK(class_number_vw(-23).value == 3);  // (1,1,6), (2,+-1,3)
    CHECK_THROWS_AS(class_number_vw(-5), BadDiscriminant);
    CHECK_THROWS_AS(class_number_vw(4), BadDiscriminant);
    for (i64 d = 3; d < 200; ++d) {
        if (d % 4 != 0 && d % 4 != 3) continue;
        auto v = class_number_vw(-d);
        CHECK(v.value > 0);
        mpq_class scaled = v.value * 6;
        CHECK(scaled.get_den() == 1);  // denominator divides 6
    }
}

TEST_CASE("cusp form dimensions") {
    CHECK(dim_cusp_forms(4) == 0);
    CHECK(dim_cusp_forms(10) == 0);
    CHECK(dim_cusp_forms(12) == 1);
    CHECK(dim_cusp_forms(14) == 0);
    CHECK(dim_cusp_forms(24) == 2);
    CHECK(dim_cusp_forms(26) == 1);
}

TEST_CASE("q-expansion oracle") {
    CHECK(tau_oracle(1) == 1);
    CHECK(tau_oracle(2) == -24);
    CHECK(tau_oracle(3) == 252);
    CHECK(tau_oracle(6) == tau_oracle(2) * tau_oracle(3));
    CHECK(tau_oracle(5) == 4830);
    CHECK(tau_oracle(11) == 534612);
    // Hecke multiplicativity at a prime square: tau(p^2) = tau(p)^2 - p^11
    mpz_class p11;
    mpz_ui_pow_ui(p11.get_mpz_t(), 5, 11);
    CHECK(tau_oracle(25) == tau_oracle(5) * tau_oracle(5) - p11);
    CHECK_THROWS_AS(tau_oracle(20000), OutOfRange);
    CHECK_THROWS_AS(cusp_form_coefficient(14, 3), Unsupported);
}

TEST_CASE("trace formula reproduces the one-dimensional eigenvalues") {
    CHECK(trace_eichler_selberg(12, 5).trace == 4830);
    CHECK(trace_eichler_selberg(12, 11).trace == 534612);
    CHECK(trace_eichler_selberg(10, 7).trace == 0);
    CHECK_THROWS_AS(trace_eichler_selberg(12, 3), Unsupported);
    CHECK_THROWS_AS(trace_eichler_selberg(5, 7), Unsupported);
    for (i64 p : {5LL, 7LL, 11LL, 13LL})
        for (int w : {4, 6, 8, 10, 14}) CHECK(trace_eichler_selberg(w, p).trace == 0);
}

TEST_CASE("triple agreement: brute average, trace formula, q-expansions") {
    for (i64 p : {5LL, 7LL, 11LL, 13LL})
        for (int w : {12, 16, 18, 20, 22}) {
            mpz_class es = trace_eichler_selberg(w, p).trace;
            mpz_class oracle = cusp_form_coefficient(w, p);
            mpz_class q = orthogonality::q_sum(p, w - 2);
            CHECK(es == oracle);
            CHECK(-q == to_mpz(p - 1) * es);
        }
}

TEST_CASE("scaled traces satisfy the dimension cap and vanish below weight 12") {
    for (i64 p : {5LL, 7LL, 11LL, 13LL, 101LL}) {
        for (int w = 4; w <= 40; w += 2) {
            auto t = trace_eichler_selberg(w, p);
            CHECK(std::abs(t.scaled) <= 2.0 * dim_cusp_forms(w) + 1e-9);
            if (w < 12) CHECK(t.trace == 0);
        }
    }
}

TEST_SUITE_END();
