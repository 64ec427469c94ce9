#pragma once

#include <gmpxx.h>

#include <vector>

#include "ecm/arith.hpp"

// Level-one Hecke traces and Hurwitz-type class numbers.
//
// Normalization used throughout: with G_j(t, p) = p^{j/2} U_j(t / 2 sqrt p)
// the integer Gegenbauer values, the trace of T_p on weight-l cusp forms for
// the full modular group (l >= 4 even, p > 3 prime) is
//
//   Tr_l(p) = -1 - (1/2) * sum_{t^2 < 4p} G_{l-2}(t, p) * V_w(t^2 - 4p),
//
// where V_w(D) is the weighted count of ALL reduced binary quadratic forms
// of discriminant D < 0 (imprimitive included; forms equivalent to a
// multiple of x^2+y^2 weigh 1/2, of x^2+xy+y^2 weigh 1/3).  The p^{j/2}
// scale on U_j is fixed by exact agreement with the brute-force averages
// over y^2 = x^3+ax+b mod p and with the q-expansion oracle below.
namespace ecm::hecke {

struct BadDiscriminant : Error {
    BadDiscriminant() : Error("class numbers need D < 0, D = 0 or 1 mod 4") {}
};
struct Unsupported : Error {
    explicit Unsupported(const std::string& m) : Error(m) {}
};
struct OutOfRange : Error {
    OutOfRange() : Error("coefficient index beyond the precomputed q-expansion bound") {}
};

struct ClassNumberValue {
    i64 D = 0;          // discriminant, < 0
    mpq_class value;    // denominator divides 6
};

struct TraceValue {
    int weight = 0;
    i64 p = 0;
    mpz_class trace;
    double scaled = 0.0;  // trace / p^{(weight-1)/2}
};

ClassNumberValue class_number_vw(i64 D);

int dim_cusp_forms(int weight);  // dim S_weight(SL2(Z)), weight even >= 4

TraceValue trace_eichler_selberg(int weight, i64 p);

// Integer q-expansions of the normalized cusp form generators in the
// one-dimensional spaces: weight 12 (the discriminant form) and its
// Eisenstein multiples at weights 16, 18, 20, 22, 26.
mpz_class cusp_form_coefficient(int weight, i64 n);

// Ramanujan tau: coefficient of q^n in q prod (1-q^m)^24, n <= 10^4.
mpz_class tau_oracle(i64 n);

}  // namespace ecm::hecke
