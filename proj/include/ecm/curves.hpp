#pragma once

#include <gmpxx.h>

#include "ecm/arith.hpp"

namespace ecm::curves {

struct SingularCurve : Error {
    SingularCurve() : Error("curve discriminant vanishes") {}
};
struct NotSquarefree : Error {
    NotSquarefree() : Error("4a^3 + 27b^2 has a square factor") {}
};
struct UndefinedSymbol : Error {
    UndefinedSymbol() : Error("Jacobi symbol (a/3b) undefined for this input") {}
};

// y^2 = x^3 + ax + b with the usual short-model invariants.
struct CurvePair {
    i64 a = 0, b = 0;
    i64 disc = 0;  // -16(4a^3 + 27b^2)
    i64 c4 = 0;    // -48a
    i64 c6 = 0;    // -864b

    CurvePair(i64 a_, i64 b_);
};

struct FrobeniusTrace {
    i64 p = 0;
    i64 ap = 0;
    bool good = false;  // p coprime to 16(4a^3+27b^2)
};

// a_p = -sum_x ((x^3+ax+b)/p) for odd p; a_2 defined as 0.
FrobeniusTrace ap_legendre(i64 a, i64 b, i64 p);
// hot-path variant: chi is quadratic_character_table(p)
FrobeniusTrace ap_legendre(i64 a, i64 b, i64 p, const int8_t* chi);

// #E(F_p) for p > 2 by direct point count; equals p + 1 - a_p.
i64 count_points(i64 a, i64 b, i64 p);

// p^{j/2} * lambda(p^j) as an exact integer: Gegenbauer recurrence
// G_{j+1} = ap*G_j - p*G_{j-1} at good p, plain power ap^j at bad p.
mpz_class hat_lambda(i64 ap, i64 p, int j, bool good);

// Normalized Dirichlet coefficient lambda(n), multiplicative, with
// lambda(p^j) = U_j(lambda(p)/2) at good p and lambda(p)^j at bad p.
// Primes of bad reduction are those dividing 16(4a^3 + 27b^2).
double lambda_n(const CurvePair& c, i64 n);

bool good_at(const CurvePair& c, i64 p);

// Minimality test at p: p^12 | disc and p^4 | c4 and p^6 | c6 all failing
// is required for non-minimality.
bool minimal_at(const CurvePair& c, i64 p);

// Root number by the product formula
//   w = mu(4a^3+27b^2) * (a/3b) * chi4(b) * (-1)^{a+1} * eps2,
// valid for squarefree 4a^3+27b^2; eps2 (the local factor at 2) is an input.
int root_number_formula(i64 a, i64 b, int eps2);

// Lutz-Nagell screen for the point (0, b) on y^2 = x^3 + ax + b^2:
// the point can only be torsion when b^2 | 4a^3.
bool is_torsion_candidate(i64 a, i64 b);

}  // namespace ecm::curves
