#pragma once

#include <vector>

#include "ecm/arith.hpp"

namespace ecm::special {

struct PoleRegion : Error {
    PoleRegion() : Error("Barnes G has its rightmost pole at k = -1/2") {}
};

struct GkValue {
    double k = 0;
    double value = 0;
};

// Riemann zeta for real s > 1 (Euler-Maclaurin, ~1e-15 relative).
double zeta(double s);

// zeta(s) * prod_{p in excluded} (1 - p^{-s}).
double zeta_partial(double s, const std::vector<i64>& excluded);

// Stieltjes expansion zeta(1+z) = 1/z + sum_n (-1)^n gamma_n z^n / n!;
// returns (gamma_0, ..., gamma_order), order <= 6, each to ~1e-12.
std::vector<double> zeta_laurent(int order);

double euler_gamma();

// log Gamma(x), x > 0 (thin wrapper; kept for symmetry with log_barnes_g).
double log_gamma(double x);

// log G(x) for x > 0, via the large-argument expansion plus the recurrence
// G(s+1) = Gamma(s) G(s).
double log_barnes_g(double x);

// g_k = 2^{k/2} G(1+k) sqrt(Gamma(1+2k)) / sqrt(G(1+2k) Gamma(1+k)), k > -1/2.
GkValue g_k(double k);

// 2^k prod_{j=1}^{k-1} j!/(2j)!  -- the integer-k closed form for g_k.
double g_k_factorial(int k);

}  // namespace ecm::special
