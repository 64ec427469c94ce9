#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "ecm/arith.hpp"
#include "ecm/families.hpp"

namespace ecm::predict {

struct UnsupportedK : Error {
    UnsupportedK() : Error("full moment polynomials implemented for k <= 2 only") {}
};
struct BadClass : Error {
    BadClass() : Error("(4r^3 + 27t^2, 6q) must be 1 for both residue classes") {}
};

enum class Form { LeadingOrder, FullPolynomialK1, FullPolynomialK2 };
enum class MomentVariant { Value, Derivative };

struct MomentPrediction {
    double k = 0;
    families::FamilySpec family;
    Form form = Form::LeadingOrder;
    std::vector<double> coefficients;  // polynomial in log N, ascending degree
    bool half_factor_applied = false;

    double eval(double log_n) const {
        double v = 0, t = 1;
        for (double c : coefficients) {
            v += c * t;
            t *= log_n;
        }
        return half_factor_applied ? 0.5 * v : v;
    }
};

// Moment polynomial P_k(N) from the k-fold residue of the shifted-moment
// integrand; exact combinatorics, Euler-product inputs truncated at pmax.
MomentPrediction pk_eval(int k, i64 N, const families::FamilySpec& spec, i64 pmax = 2000);

// Same residue engine with caller-supplied arithmetical-factor Taylor data
// (a0, da) -- used for structural self-tests.
std::vector<double> pk_eval_structural(int k, const std::vector<double>& a_taylor);

// (1/2) a_k g_k (log N)^{k(k-1)/2}; Derivative selects the positive-rank
// arithmetical factor.
double leading_term(double k, double log_n, const families::FamilySpec& spec,
                    MomentVariant variant, i64 pmax = 2000);

// Euler product for the positive-rank derivative constant a'_k.
double aprime_product(int k, const families::FamilySpec& spec, i64 pmax, int emax = 12);

struct StructureReport {
    int k = 0;
    int degree_pk = 0;
    int degree_qk = 0;
    bool degrees_match = false;
    double m_vanishing_residual = 0;  // |M(alpha)| at alpha = 1e-12, k = 1
    double m_slope = 0;               // lim M(alpha)/alpha
    double m_slope_consistency = 0;   // relative drift of the slope estimate
};

// Structural comparison of the value and derivative moment integrands:
// the extra 1/z_i poles are cancelled by the 1/zeta(1+z_i) zeros, so both
// polynomials have degree k(k-1)/2.
StructureReport qk_structure_check(int k);

struct RatioPrediction {
    i64 q = 0;
    i64 r = 0, t = 0, r2 = 0, t2 = 0;
    double value = 0;
    // exact per-prime point-count ratios N_p(r,t)/N_p(r2,t2)
    std::vector<std::pair<i64, mpq_class>> np_ratio_factors;
};

// prod_{p|q} [(1 - lambda_{r,t}(p)/sqrt p + 1/p) /
//            (1 - lambda_{r2,t2}(p)/sqrt p + 1/p)]^{-k};
// at k = -1/2 this is prod (N_p(r,t)/N_p(r2,t2))^{1/2}.
RatioPrediction ratio_rq(i64 q, i64 r, i64 t, i64 r2, i64 t2, double k);

// A'_1(alpha) / zeta(1+alpha), the curve-independent part of the
// positive-rank first moment; |alpha| < 1/6 - 0.01.
double rh_first_moment(double alpha, i64 pmax, const families::FamilySpec& spec);

// Exact limit of the family average of lambda_E(n) over the positive-rank
// family, squarefree n.
double moebius_expectation(i64 n, const families::FamilySpec& spec);

// X_N^{-1/2}(1/2 + z) for real |z| < 1.
double x_inv_sqrt(double z, double N);

// K(alpha) + K(-alpha) with K = A_1(alpha) X_N^{-1/2}(1/2+alpha) -- the
// even-root-number first-moment object; even in alpha by construction.
double m1_symmetrized(double alpha, double N, const families::FamilySpec& spec, i64 pmax);

// Positive-rank first-moment object M(alpha) = A'(alpha) Y(alpha) / zeta(1+alpha),
// evaluated stably through the Laurent data near alpha = 0.
double m1_positive_rank(double alpha, double N, const families::FamilySpec& spec, i64 pmax);

}  // namespace ecm::predict
