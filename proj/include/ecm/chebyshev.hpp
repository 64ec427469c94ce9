#pragma once

#include <functional>
#include <map>
#include <span>
#include <vector>

#include "ecm/arith.hpp"

namespace ecm::chebyshev {

struct ToleranceNotMet : Error {
    ToleranceNotMet() : Error("quadrature refinement stalled before reaching tolerance") {}
};
struct DivergentRegion : Error {
    DivergentRegion() : Error("generating series diverges for |t| >= 1") {}
};

// Chebyshev polynomial of the second kind, U_n(x).
double u_eval(int n, double x);

// Integer coefficients c_l in  U_{e_1} ... U_{e_k} = sum_l c_l U_l.
struct LinearizationTable {
    std::vector<int> exps;
    std::map<int, long long> coeffs;  // only nonzero entries
    int total = 0;                    // f = sum e_i

    long long at(int l) const {
        auto it = coeffs.find(l);
        return it == coeffs.end() ? 0 : it->second;
    }
};

LinearizationTable linearize(std::span<const int> exps);

// Integral of f over [0, pi] against (2/pi) sin^2(theta) dtheta,
// adaptive Gauss-Legendre with absolute tolerance tol.
double sato_tate_integral(const std::function<double(double)>& f, double tol);

// sum_{n>=0} U_{2n}(x) t^{2n} = (1+t^2) / (1 + 2t^2(1-2x^2) + t^4), |t| < 1.
double even_index_sum(double x, double t);

// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
struct Quadrature {
    std::vector<double> x, w;
};
const Quadrature& gauss_legendre(int order);

}  // namespace ecm::chebyshev
