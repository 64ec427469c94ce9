#include "ecm/predict.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "ecm/curves.hpp"
#include "ecm/euler.hpp"
#include "ecm/series.hpp"
#include "ecm/special.hpp"

namespace ecm::predict {

using series::BiSeries;

namespace {

constexpr int kDeg = 6;

// coefficients of s * zeta(1+s) = 1 + sum_n (-1)^n gamma_n s^{n+1} / n!
std::vector<double> zeta1_coeffs() {
    auto g = special::zeta_laurent(kDeg - 1);
    std::vector<double> c(kDeg + 1, 0.0);
    c[0] = 1.0;
    double fact = 1.0;
    for (int n = 0; n + 1 <= kDeg; ++n) {
        if (n > 0) fact *= n;
        c[n + 1] = ((n % 2 == 0) ? 1.0 : -1.0) * g[n] / fact;
    }
    return c;
}

double zeta1_eval(double s) {
    auto c = zeta1_coeffs();
    double v = 0, t = 1;
    for (double ci : c) {
        v += ci * t;
        t *= s;
    }
    return v;
}

// 1/zeta(1+a), stable through a = 0
double inv_zeta_1p(double a) {
    if (std::abs(a) < 0.05) return a / zeta1_eval(a);
    return 1.0 / special::zeta(1.0 + a);
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b,
                             int deg) {
    std::vector<double> c(deg + 1, 0.0);
    for (int i = 0; i < static_cast<int>(a.size()) && i <= deg; ++i)
        for (int j = 0; j < static_cast<int>(b.size()) && i + j <= deg; ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

std::vector<double> poly_exp(const std::vector<double>& h, int deg) {
    // h[0] must be 0
    std::vector<double> e(deg + 1, 0.0), term(deg + 1, 0.0);
    e[0] = 1.0;
    term[0] = 1.0;
    for (int i = 1; i <= deg; ++i) {
        term = poly_mul(term, h, deg);
        double inv = 1.0;
        for (int j = 1; j <= i; ++j) inv /= j;
        for (int d = 0; d <= deg; ++d) e[d] += term[d] * inv;
    }
    return e;
}

// Taylor coefficients of Yhat(z) = exp(-gamma z - sum_{m odd >= 3} zeta(m) z^m / m),
// the N-independent part of X_N^{-1/2}(1/2+z)
std::vector<double> yhat_coeffs() {
    std::vector<double> h(kDeg + 1, 0.0);
    h[1] = -special::euler_gamma();
    for (int m = 3; m <= kDeg; m += 2) h[m] = -special::zeta(m) / m;
    return poly_exp(h, kDeg);
}

// u-graded coefficients of [z1^2 z2^2] base * (z1+z2)^m / m!
std::vector<double> residue_by_log_power(const BiSeries& base, int mmax) {
    std::vector<double> out(mmax + 1, 0.0);
    BiSeries s = BiSeries::variable(kDeg, 0) + BiSeries::variable(kDeg, 1);
    BiSeries pw = BiSeries::constant(kDeg, 1.0);
    double fact = 1.0;
    for (int m = 0; m <= mmax; ++m) {
        if (m > 0) {
            pw = pw * s;
            fact *= m;
        }
        out[m] = (base * pw).coeff(2, 2) / fact;
    }
    return out;
}

// base integrand factor shared by the k = 2 value/derivative polynomials:
// [s zeta(1+s)] * s * (z2-z1)^2 * A(z) * Yhat(z1) Yhat(z2) * extra(z1) extra(z2)
BiSeries k2_base(const std::vector<double>& a_taylor, const std::vector<double>& extra) {
    BiSeries z1 = BiSeries::variable(kDeg, 0);
    BiSeries z2 = BiSeries::variable(kDeg, 1);
    BiSeries s = z1 + z2;
    BiSeries zeta1 = BiSeries::of_sum(kDeg, zeta1_coeffs());
    BiSeries diff = z2 - z1;
    BiSeries aser = BiSeries::constant(kDeg, a_taylor[0]);
    if (a_taylor.size() > 1) aser = aser + s.scaled(a_taylor[1]);
    auto yh = yhat_coeffs();
    BiSeries y1 = BiSeries::of_single(kDeg, yh, 0);
    BiSeries y2 = BiSeries::of_single(kDeg, yh, 1);
    BiSeries base = zeta1 * s * (diff * diff) * aser * y1 * y2;
    if (!extra.empty()) {
        BiSeries e1 = BiSeries::of_single(kDeg, extra, 0);
        BiSeries e2 = BiSeries::of_single(kDeg, extra, 1);
        base = base * e1 * e2;
    }
    return base;
}

// polynomial in log N from the u-graded residue coefficients:
// value = pref * (c0 + c1 u + ...), u = (log N - log 4pi^2)/2
std::vector<double> logn_poly(const std::vector<double>& cm, double pref) {
    double shift = -std::log(4.0 * std::numbers::pi * std::numbers::pi);
    // degree 1 is all that survives; fold c0, c1
    double c0 = cm[0] + cm[1] * shift / 2.0;
    double c1 = cm[1] / 2.0;
    return {pref * c0, pref * c1};
}

double lambda_scaled_rt(const families::FamilySpec& spec, i64 p) {
    i64 a = spec.r;
    i64 b = (spec.variant == families::Variant::PositiveRank) ? spec.t * spec.t : spec.t;
    return static_cast<double>(curves::ap_legendre(a, b, p).ap);
}

}  // namespace

double x_inv_sqrt(double z, double N) {
    double l = std::log(std::sqrt(N) / (2.0 * std::numbers::pi));
    return std::exp(z * l + 0.5 * (std::lgamma(1.0 + z) - std::lgamma(1.0 - z)));
}

std::vector<double> pk_eval_structural(int k, const std::vector<double>& a_taylor) {
    if (k == 1) return {2.0 * a_taylor[0]};
    if (k != 2) throw UnsupportedK();
    auto cm = residue_by_log_power(k2_base(a_taylor, {}), 4);
    double scale = std::abs(cm[0]) + std::abs(cm[1]) + 1.0;
    if (std::abs(cm[2]) > 1e-8 * scale || std::abs(cm[3]) > 1e-8 * scale)
        throw Error("pk_eval: residue grading leaked beyond degree 1");
    return logn_poly(cm, -2.0);
}

MomentPrediction pk_eval(int k, i64 N, const families::FamilySpec& spec, i64 pmax) {
    if (k != 1 && k != 2) throw UnsupportedK();
    spec.validate();
    MomentPrediction mp;
    mp.k = k;
    mp.family = spec;
    mp.half_factor_applied = false;
    (void)N;

    if (k == 1) {
        mp.form = Form::FullPolynomialK1;
        double a1 = euler::ak(1.0, spec, pmax).value;
        mp.coefficients = {2.0 * a1};
        return mp;
    }

    mp.form = Form::FullPolynomialK2;
    double a0 = euler::ak(2.0, spec, pmax).value;
    // dA/dz1 at 0 by central differences with Richardson extrapolation
    auto aval = [&](double h) {
        std::vector<double> z{h, 0.0};
        return euler::a_shifted(z, spec, pmax);
    };
    double h = 1e-3;
    double d_h = (aval(h) - aval(-h)) / (2.0 * h);
    double d_h2 = (aval(h / 2) - aval(-h / 2)) / h;
    double d1 = (4.0 * d_h2 - d_h) / 3.0;
    mp.coefficients = pk_eval_structural(2, {a0, d1});
    return mp;
}

double aprime_product(int k, const families::FamilySpec& spec, i64 pmax, int emax) {
    spec.validate();
    if (spec.variant != families::Variant::PositiveRank)
        throw Error("aprime_product: positive-rank family required");
    double expo = k * (k - 1) / 2.0 - k;
    double value = std::pow(0.5, expo);  // p = 2: trivial series factor
    {
        double t3 = lambda_scaled_rt(spec, 3);
        double h3 = std::pow(1.0 - t3 / 3.0 + 1.0 / 3.0, -static_cast<double>(k));
        value *= h3 * std::pow(2.0 / 3.0, expo);
    }
    for (i64 p : arith::primes_up_to(pmax)) {
        if (p <= 3) continue;
        value *= euler::aprime_local(p, k, std::max(emax, euler::aprime_default_emax(p)));
    }
    return value;
}

double leading_term(double k, double log_n, const families::FamilySpec& spec,
                    MomentVariant variant, i64 pmax) {
    double a;
    if (variant == MomentVariant::Value) {
        a = euler::ak(k, spec, pmax).value;
    } else {
        double ki = std::round(k);
        if (std::abs(ki - k) > 1e-12 || ki < 0)
            throw Error("leading_term: derivative variant needs integer k >= 0");
        a = aprime_product(static_cast<int>(ki), spec, pmax);
    }
    double g = special::g_k(k).value;
    return 0.5 * a * g * std::pow(log_n, k * (k - 1) / 2.0);
}

StructureReport qk_structure_check(int k) {
    if (k != 1 && k != 2) throw UnsupportedK();
    StructureReport rep;
    rep.k = k;

    // inverse-zeta Taylor data: 1/zeta(1+z) = z * u(z), u = 1/(z zeta(1+z))
    auto z1c = zeta1_coeffs();
    std::vector<double> u(kDeg + 1, 0.0);  // reciprocal series of zeta1
    u[0] = 1.0;
    for (int n = 1; n <= kDeg; ++n) {
        double s = 0.0;
        for (int i = 1; i <= n; ++i) s += z1c[i] * u[n - i];
        u[n] = -s;
    }

    if (k == 1) {
        // both integrands carry a simple pole at the origin; the residue
        // engine returns a single (constant) coefficient for each
        rep.degree_pk = static_cast<int>(pk_eval_structural(1, {1.0, 0.0}).size()) - 1;
        double q1 = 2.0 * u[0];  // residue of A u(z) Y / z with A = Y = 1
        rep.degree_qk = (std::abs(q1) > 0) ? 0 : -1;
    } else {
        auto cp = residue_by_log_power(k2_base({1.0, 0.0}, {}), 4);
        auto cq = residue_by_log_power(k2_base({1.0, 0.0}, u), 4);
        rep.degree_pk = (std::abs(cp[1]) > 1e-12) ? 1 : 0;
        rep.degree_qk = (std::abs(cq[1]) > 1e-12) ? 1 : 0;
    }
    rep.degrees_match = rep.degree_pk == rep.degree_qk && rep.degree_pk == k * (k - 1) / 2;

    // positive-rank first moment vanishes at the central point
    families::FamilySpec fp;
    fp.variant = families::Variant::PositiveRank;
    fp.r = 1;
    fp.t = 1;
    fp.X = 1e4;
    const double N = 1000.0;
    rep.m_vanishing_residual = std::abs(m1_positive_rank(1e-12, N, fp, 400));
    double s1 = m1_positive_rank(1e-4, N, fp, 400) / 1e-4;
    double s2 = m1_positive_rank(1e-5, N, fp, 400) / 1e-5;
    rep.m_slope = s2;
    rep.m_slope_consistency = std::abs(s1 - s2) / std::max(1e-30, std::abs(s2));
    return rep;
}

RatioPrediction ratio_rq(i64 q, i64 r, i64 t, i64 r2, i64 t2, double k) {
    if (q <= 0 || !arith::is_squarefree(q) || std::gcd(q, static_cast<i64>(6)) != 1)
        throw Error("ratio_rq: q must be positive, squarefree, coprime to 6");
    auto check = [&](i64 rr, i64 tt) {
        i128 m = i128(4) * rr * rr * rr + i128(27) * tt * tt;
        i64 mm = static_cast<i64>(((m % (6 * q)) + 6 * q) % (6 * q));
        if (std::gcd(mm, 6 * q) != 1) throw BadClass();
    };
    check(r, t);
    check(r2, t2);

    RatioPrediction rp;
    rp.q = q;
    rp.r = r;
    rp.t = t;
    rp.r2 = r2;
    rp.t2 = t2;
    double v = 1.0;
    for (auto [p, e] : arith::factorize(q)) {
        (void)e;
        i64 n1 = curves::count_points(r, t, p);
        i64 n2 = curves::count_points(r2, t2, p);
        rp.np_ratio_factors.emplace_back(p, mpq_class(static_cast<long>(n1),
                                                      static_cast<long>(n2)));
        double f1 = 1.0 - static_cast<double>(curves::ap_legendre(r, t, p).ap) / p + 1.0 / p;
        double f2 = 1.0 - static_cast<double>(curves::ap_legendre(r2, t2, p).ap) / p + 1.0 / p;
        v *= std::pow(f1 / f2, -k);
    }
    rp.value = v;
    return rp;
}

double rh_first_moment(double alpha, i64 pmax, const families::FamilySpec& spec) {
    if (std::abs(alpha) >= 1.0 / 6.0 - 0.01) throw euler::OutsideRegion();
    double aprime = euler::a1prime(alpha, pmax, spec).value;
    return aprime * inv_zeta_1p(alpha);
}

double moebius_expectation(i64 n, const families::FamilySpec& spec) {
    if (n <= 0 || !arith::is_squarefree(n)) throw Error("moebius_expectation: squarefree n");
    if (spec.variant != families::Variant::PositiveRank)
        throw Error("moebius_expectation: positive-rank family required");
    double v = 1.0;
    for (auto [p, e] : arith::factorize(n)) {
        (void)e;
        if (p == 2) return 0.0;  // the short model is additive at 2
        if (p == 3) {
            v *= lambda_scaled_rt(spec, 3) / std::sqrt(3.0);
            continue;
        }
        double pd = static_cast<double>(p);
        v *= (-1.0 / std::sqrt(pd) + std::pow(pd, -1.5)) / (1.0 - std::pow(pd, -7.0));
    }
    return v;
}

double m1_symmetrized(double alpha, double N, const families::FamilySpec& spec, i64 pmax) {
    auto K = [&](double a) {
        std::vector<double> z{a};
        return euler::a_shifted(z, spec, pmax) * x_inv_sqrt(a, N);
    };
    return K(alpha) + K(-alpha);
}

double m1_positive_rank(double alpha, double N, const families::FamilySpec& spec, i64 pmax) {
    double aprime = euler::a1prime(alpha, pmax, spec).value;
    return aprime * inv_zeta_1p(alpha) * x_inv_sqrt(alpha, N);
}

}  // namespace ecm::predict
