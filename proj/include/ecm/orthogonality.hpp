#pragma once

#include <span>
#include <vector>

#include "ecm/arith.hpp"
#include "ecm/families.hpp"
#include "ecm/sqrt_rational.hpp"

namespace ecm::orthogonality {

struct Unsupported : Error {
    explicit Unsupported(const std::string& m) : Error(m) {}
};

enum class Source { BruteForce, ClosedForm };

// Exact value of a prime-power family average, carried as coeff * sqrt(surd)
// so closed-form/brute-force comparisons are equality tests.
struct LocalSum {
    i64 p = 0;
    std::vector<int> exps;
    SqrtRational value;
    Source source = Source::BruteForce;
};

// Q*(p^{e_1},...,p^{e_k}) = (1/p^2) sum_{a,b mod p} lambda_{a,b}(p^{e_1})...
// by direct summation with integer Gegenbauer values.  All intermediates are
// big integers, so any total exponent is exact; the trace-oracle cross-checks
// cover total exponents up to 24 (weight 26).
LocalSum qstar_brute(i64 p, std::span<const int> exps);

// Q(p^j) = sum_{a,b mod p} p^{j/2} lambda_{a,b}(p^j), an exact integer.
mpz_class q_sum(i64 p, int j);

// The trace-formula closed form for Q*(p^{e_1},...,p^{e_k}), p > 3:
//   c_0 (p-1)/p - sum_{l>=1} c_l [ (p-1) Tr_{l+2}(p) / p^{(l+4)/2}
//                                  + (p-1) p^{-2-l/2} ] + (p-1) p^{-2-f/2}
// for even f > 0; exact rational output.  For odd f returns 0; for f = 0
// returns the formula value 1 - p^{-2} (the bare average is 1 instead).
LocalSum qstar_closed(i64 p, std::span<const int> exps);

// Q*_sq(p^{e_1},...) with b replaced by b^2 in the average.
LocalSum qsquare_brute(i64 p, std::span<const int> exps);

// Direct average over (a,b) mod rad(lcm(n_i)) of lambda_{a,b}(n_1)...;
// reference implementation for the multiplicativity checks.
SqrtRational qstar_brute_composite(std::span<const i64> n);

// Q*_{r,t}(n_1,...,n_k): fixed-residue factors at p | 6q, prime-local Q*
// factors away from 6q, and the sieve factor prod_{p | n, p coprime 6q}
// (1 - p^{-10})^{-1}.
SqrtRational assemble_qstar_rt(std::span<const i64> n, const families::FamilySpec& spec);

// Trace classes of y^2 = x^3 + ax + c over F_p, grouped so that any sum
// sum_{a,c} chi(c)^eps * prod_i G_{e_i}(trace) costs O(#classes) once built.
// Built in O(p^2) via the quartic/sextic twist-orbit structure.
struct TwistClasses {
    i64 p = 0;
    struct Cls {
        i64 count_ac = 0;   // number of (a,c) pairs in the class
        i64 count_b = 0;    // number of (a,b) with b^2 = c landing in it
        i64 trace = 0;
        bool good = false;  // false on the discriminant-zero locus
    };
    std::vector<Cls> classes;

    static const TwistClasses& get(i64 p);  // cached

    // sum over (a,b) mod p of prod_i lambda_{a,b^2}(p^{e_i}), exact
    SqrtRational square_family_sum(std::span<const int> exps) const;
    // same for the plain (a,b) average (equals p^2 Q*)
    SqrtRational plain_family_sum(std::span<const int> exps) const;
    // all k = 1 sums at once: entry e is sum_{a,b} lambda_{a,b^2}(p^e)
    std::vector<SqrtRational> square_power_sums(int emax) const;
};

}  // namespace ecm::orthogonality
