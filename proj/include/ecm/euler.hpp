#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ecm/arith.hpp"
#include "ecm/families.hpp"

// Arithmetical factors as truncated Euler products.
//
// For the all-curves family the local factor away from 6q is, with
// V_p(theta; z) = (1 - 2 cos(theta) p^{-1/2-z} + p^{-1-2z})^{-1} and
// K_p(theta) = (1 - 2 cos(2 theta)/p + 1/p^2)^{-1},
//
//   H_p(z_1..z_k) = 1 + (1 - 1/p)(1 - p^{-10})^{-1} [ T1 + T2 + T3 + T4 ],
//   T1 = -1 + int prod_j V_p(theta; z_j) dmu
//   T2 = -p^{-1/2} sum_l Tr*_{l+2}(p) int U_l prod_j V_p dmu
//   T3 = -(1/p) int (-1 + (1 + 1/p) K_p) prod_j V_p dmu
//   T4 = +(1/p) (-1 + (1/2)[prod_j (1 - p^{-1-z_j})^{-1}
//                           + prod_j (1 + p^{-1-z_j})^{-1}])
//
// equal term-by-term to the Dirichlet series over the exact prime-power
// averages.  (Summing the even-index Chebyshev generating series puts the
// (1+1/p) factor inside the T3 integrand; writing T3/T4 with any other
// constant split breaks the k = 0 normalization.)
namespace ecm::euler {

struct OutsideRegion : Error {
    OutsideRegion() : Error("outside the convergence region of the Euler product") {}
};
struct TruncationWarning : Error {
    TruncationWarning() : Error("series truncation shell above tolerance; raise emax") {}
};

struct EulerProductResult {
    double k = 0;
    i64 pmax = 0;
    double value = 0;
    double tail_estimate = 0;
    std::optional<std::vector<std::pair<i64, double>>> per_prime_log;
};

// Local Dirichlet-series factor at z = (z_1..z_k) for p coprime to 6q.
double h_local_shifted(i64 p, std::span<const double> shifts);
// Same at z = 0 with the product V^k taken to a real power k > -1/2.
double h_local_real_k(i64 p, double k);

// Local factor of a_k (zeta factors removed):
//   p coprime 6q:  (1-1/p)^{k(k-1)/2} * H_p(0,..,0)
//   p | 3q:        (1 - lambda_{r,t}(p)/sqrt(p) + 1/p)^{-k}
double ak_local(i64 p, double k, const families::FamilySpec& spec);

// a_k = (phi(6q)/6q)^{k(k-1)/2} * prod_{p|3q} (...) * prod_{p<=pmax} ak_local.
EulerProductResult ak(double k, const families::FamilySpec& spec, i64 pmax,
                      bool keep_per_prime = false);

// A_k at real shifts (k = shifts.size()), all local zeta factors removed;
// finite at and near z = 0.
double a_shifted(std::span<const double> shifts, const families::FamilySpec& spec, i64 pmax);

// Exact local positive-rank series factor at z = 0:
//   H'_p = 1 + (1 - p^{-7})^{-1} sum_{0 < sum e_i <= emax} Qsq(p^{e_i...}) p^{-f/2}
// times (1-1/p)^{k(k-1)/2 - k} to isolate the A'_k local factor.
double aprime_local(i64 p, int k, int emax);

// A'_1(alpha) for Re(alpha) > -1/6: exact prime-power sums below
// brute_below, closed forms (trace form for even shells, the exact value
// for the first shell) beyond; odd shells >= 3 beyond brute_below enter the
// tail estimate only.
EulerProductResult a1prime(double alpha, i64 pmax, const families::FamilySpec& spec,
                           int emax = 14, i64 brute_below = 1200);

// H'_p(alpha), the local factor of the positive-rank Dirichlet series,
// exact prime-power sums truncated at emax.
double h_prime_local(i64 p, double alpha, int emax);

// shell depth at p that puts the last shell under the truncation tolerance
int aprime_default_emax(i64 p);

}  // namespace ecm::euler
