#include "ecm/euler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ecm/chebyshev.hpp"
#include "ecm/curves.hpp"
#include "ecm/hecke.hpp"
#include "ecm/orthogonality.hpp"

namespace ecm::euler {

namespace {

constexpr double kQuadTol = 1e-12;

// even l >= 10 with nonzero trace space, below the decay cutoff
std::vector<int> trace_levels(i64 p) {
    std::vector<int> ls;
    double pd = static_cast<double>(p);
    for (int l = 10; l <= 60; l += 2) {
        int dim = hecke::dim_cusp_forms(l + 2);
        if (dim == 0) continue;
        if (std::pow(pd, -l / 2.0) * 2.0 * dim < 1e-15) break;
        ls.push_back(l);
    }
    return ls;
}

// Core of the local brace: integrates V(theta), the K-correction and the
// trace terms on shared Gauss-Legendre nodes with order doubling.
double brace_core(i64 p, const std::function<double(double)>& vprod, double t4) {
    const double pd = static_cast<double>(p);
    const double pi = std::numbers::pi;
    auto levels = trace_levels(p);
    std::vector<double> tr_scaled(levels.size());
    for (size_t i = 0; i < levels.size(); ++i)
        tr_scaled[i] = hecke::trace_eichler_selberg(levels[i] + 2, p).scaled;

    double prev = 0.0;
    bool have_prev = false;
    for (int order = 96; order <= 6144; order *= 2) {
        const auto& q = chebyshev::gauss_legendre(order);
        double i_v = 0.0, i_k = 0.0;
        std::vector<double> i_l(levels.size(), 0.0);
        for (int i = 0; i < order; ++i) {
            double theta = 0.5 * pi * (q.x[i] + 1.0);
            double st = std::sin(theta), ct = std::cos(theta);
            double w = q.w[i] * st * st;
            double v = vprod(ct);
            i_v += w * v;
            double c2 = 2.0 * ct * ct - 1.0;  // cos 2theta
            double kp = 1.0 / (1.0 - 2.0 * c2 / pd + 1.0 / (pd * pd));
            i_k += w * (-1.0 + (1.0 + 1.0 / pd) * kp) * v;
            if (!levels.empty()) {
                // U_l(cos theta) by recurrence, sampled at the needed l
                double um1 = 1.0, u = 2.0 * ct;
                int l = 1;
                for (size_t li = 0; li < levels.size(); ++li) {
                    while (l < levels[li]) {
                        double t = 2.0 * ct * u - um1;
                        um1 = u;
                        u = t;
                        ++l;
                    }
                    i_l[li] += w * u * v;
                }
            }
        }
        double t1 = i_v - 1.0;
        double t2 = 0.0;
        for (size_t li = 0; li < levels.size(); ++li) t2 += tr_scaled[li] * i_l[li];
        t2 *= -1.0 / std::sqrt(pd);
        double t3 = -i_k / pd;
        double delta = 1.0 / (1.0 - std::pow(pd, -10.0));
        double brace = 1.0 + (1.0 - 1.0 / pd) * delta * (t1 + t2 + t3 + t4);
        if (have_prev && std::abs(brace - prev) <= kQuadTol) return brace;
        prev = brace;
        have_prev = true;
    }
    throw chebyshev::ToleranceNotMet();
}

double t4_shifted(i64 p, std::span<const double> shifts) {
    double pd = static_cast<double>(p);
    double prod_m = 1.0, prod_p = 1.0;
    for (double z : shifts) {
        double x = std::pow(pd, -1.0 - z);
        prod_m *= 1.0 / (1.0 - x);
        prod_p *= 1.0 / (1.0 + x);
    }
    return (-1.0 + 0.5 * (prod_m + prod_p)) / pd;
}

i64 lambda_hat_rt(const families::FamilySpec& spec, i64 p, bool* good = nullptr) {
    // trace of the fixed-residue curve; for the positive-rank family the
    // second coefficient is t^2
    i64 a = spec.r;
    i64 b = (spec.variant == families::Variant::PositiveRank) ? spec.t * spec.t : spec.t;
    auto tr = curves::ap_legendre(a, b, p);
    if (good) {
        i128 m = i128(4) * a * a * a + i128(27) * b * b;
        *good = static_cast<i64>(((m % p) + p) % p) != 0;
    }
    return tr.ap;
}

}  // namespace

double h_local_shifted(i64 p, std::span<const double> shifts) {
    if (p <= 3) throw Error("h_local_shifted: p > 3 required");
    double pd = static_cast<double>(p);
    std::vector<double> pw(shifts.size()), pw2(shifts.size());
    for (size_t j = 0; j < shifts.size(); ++j) {
        pw[j] = std::pow(pd, -0.5 - shifts[j]);
        pw2[j] = std::pow(pd, -1.0 - 2.0 * shifts[j]);
    }
    auto vprod = [&](double ct) {
        double v = 1.0;
        for (size_t j = 0; j < pw.size(); ++j) v /= 1.0 - 2.0 * ct * pw[j] + pw2[j];
        return v;
    };
    return brace_core(p, vprod, t4_shifted(p, shifts));
}

double h_local_real_k(i64 p, double k) {
    if (p <= 3) throw Error("h_local_real_k: p > 3 required");
    if (k <= -0.5) throw OutsideRegion();
    double pd = static_cast<double>(p);
    double sq = 1.0 / std::sqrt(pd);
    auto vprod = [&](double ct) {
        double v0 = 1.0 / (1.0 - 2.0 * ct * sq + 1.0 / pd);
        return std::pow(v0, k);
    };
    double t4 = (-1.0 + 0.5 * (std::pow(1.0 - 1.0 / pd, -k) + std::pow(1.0 + 1.0 / pd, -k))) / pd;
    return brace_core(p, vprod, t4);
}

double ak_local(i64 p, double k, const families::FamilySpec& spec) {
    i64 sixq = 6 * spec.q;
    if (sixq % p == 0) {
        if (p == 2) return 1.0;
        i64 t = lambda_hat_rt(spec, p);
        double pd = static_cast<double>(p);
        return std::pow(1.0 - t / pd + 1.0 / pd, -k);
    }
    return std::pow(1.0 - 1.0 / static_cast<double>(p), k * (k - 1) / 2) * h_local_real_k(p, k);
}

EulerProductResult ak(double k, const families::FamilySpec& spec, i64 pmax,
                      bool keep_per_prime) {
    if (k <= -0.5) throw OutsideRegion();
    if (pmax < 11) throw Error("ak: pmax >= 11 required");
    spec.validate();

    EulerProductResult res;
    res.k = k;
    res.pmax = pmax;

    i64 sixq = 6 * spec.q;
    double phi_ratio = 1.0;
    for (auto [p, e] : arith::factorize(sixq)) {
        (void)e;
        phi_ratio *= 1.0 - 1.0 / static_cast<double>(p);
    }
    double value = std::pow(phi_ratio, k * (k - 1) / 2);
    for (auto [p, e] : arith::factorize(sixq)) {
        (void)e;
        if (p == 2) continue;  // no local factor at 2
        value *= ak_local(p, k, spec);
    }

    auto primes = arith::primes_up_to(pmax);
    std::vector<std::pair<i64, double>> locals;
    for (i64 p : primes) {
        if (sixq % p == 0) continue;
        locals.emplace_back(p, ak_local(p, k, spec));
    }
    for (auto& [p, v] : locals) {
        (void)p;
        value *= v;
    }
    res.value = value;

    double c = 0.0;
    for (auto& [p, v] : locals)
        if (p >= pmax / 10)
            c = std::max(c, std::abs(v - 1.0) * static_cast<double>(p) * static_cast<double>(p));
    res.tail_estimate = c / static_cast<double>(pmax);
    if (keep_per_prime) res.per_prime_log = std::move(locals);
    return res;
}

double a_shifted(std::span<const double> shifts, const families::FamilySpec& spec, i64 pmax) {
    spec.validate();
    i64 sixq = 6 * spec.q;
    size_t k = shifts.size();

    auto zeta_removal = [&](i64 p) {
        double pd = static_cast<double>(p);
        double f = 1.0;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                f *= 1.0 - std::pow(pd, -1.0 - shifts[i] - shifts[j]);
        return f;
    };

    double value = 1.0;
    for (auto [p, e] : arith::factorize(sixq)) {
        (void)e;
        value *= zeta_removal(p);
        if (p != 2) {
            i64 t = lambda_hat_rt(spec, p);
            double pd = static_cast<double>(p);
            for (double z : shifts)
                value /= 1.0 - t * std::pow(pd, -1.0 - z) + std::pow(pd, -1.0 - 2.0 * z);
        }
    }
    for (i64 p : arith::primes_up_to(pmax)) {
        if (sixq % p == 0) continue;
        value *= h_local_shifted(p, shifts) * zeta_removal(p);
    }
    return value;
}

namespace {

// enumerate exponent tuples (e_1..e_k) with 0 < sum <= emax
void tuples_rec(int k, int emax, std::vector<int>& cur,
                const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(cur.size()) == k) {
        int f = 0;
        for (int e : cur) f += e;
        if (f > 0) fn(cur);
        return;
    }
    int used = 0;
    for (int e : cur) used += e;
    for (int e = 0; e <= emax - used; ++e) {
        cur.push_back(e);
        tuples_rec(k, emax, cur, fn);
        cur.pop_back();
    }
}

// exact H'_p shells: shell[f] = sum over tuples with sum e_i = f of
// Qsq(p^{e_1..e_k}) p^{-f/2}, a rational number
std::vector<mpq_class> hprime_shells(i64 p, int k, int emax) {
    const auto& tc = orthogonality::TwistClasses::get(p);
    std::vector<mpq_class> shells(emax + 1, mpq_class(0));
    mpz_class p2 = to_mpz(p) * to_mpz(p);

    if (k == 1) {
        auto sums = tc.square_power_sums(emax);
        for (int f = 1; f <= emax; ++f) {
            SqrtRational scaled = sums[f] * SqrtRational::half_power(p, -f);
            if (!scaled.is_rational()) throw Error("hprime_shells: non-rational shell term");
            shells[f] += scaled.coeff() / mpq_class(p2);
        }
        return shells;
    }
    if (k == 2) {
        // per-class self-convolution of the Gegenbauer vector
        std::vector<mpz_class> conv_f(emax + 1, mpz_class(0));
        for (const auto& cls : tc.classes) {
            if (cls.count_b == 0) continue;
            std::vector<mpz_class> g(emax + 1);
            g[0] = 1;
            if (cls.good) {
                for (int e = 1; e <= emax; ++e)
                    g[e] = (e == 1) ? to_mpz(cls.trace)
                                    : to_mpz(cls.trace) * g[e - 1] - to_mpz(p) * g[e - 2];
            } else {
                for (int e = 1; e <= emax; ++e) g[e] = g[e - 1] * to_mpz(cls.trace);
            }
            mpz_class cnt = to_mpz(cls.count_b);
            for (int e1 = 0; e1 <= emax; ++e1) {
                if (g[e1] == 0) continue;
                for (int e2 = 0; e1 + e2 <= emax; ++e2)
                    conv_f[e1 + e2] += cnt * g[e1] * g[e2];
            }
        }
        for (int f = 1; f <= emax; ++f) {
            // conv_f[f] = sum_{a,b} sum_{e1+e2=f} G_{e1} G_{e2}; scale p^{-f}
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p),
                          static_cast<unsigned long>(f));
            shells[f] += mpq_class(conv_f[f]) / mpq_class(p2 * den);
        }
        return shells;
    }

    std::vector<int> cur;
    tuples_rec(k, emax, cur, [&](const std::vector<int>& e) {
        int f = 0;
        for (int ei : e) f += ei;
        SqrtRational qsq = tc.square_family_sum(e);  // = p^2 Qsq(...) as coeff*sqrt(p^(f&1))
        SqrtRational scaled = qsq * SqrtRational::half_power(p, -f);
        if (!scaled.is_rational()) throw Error("hprime_shells: non-rational shell term");
        shells[f] += scaled.coeff() / mpq_class(p2);
    });
    return shells;
}

// shell depth so the last shell sits below the truncation tolerance
int adaptive_emax(i64 p) {
    double lp = std::log(static_cast<double>(p));
    int e = static_cast<int>(std::ceil(2.0 * (13.0 * std::log(10.0) + 3.0) / lp));
    return std::clamp(e, 6, 42);
}

}  // namespace

int aprime_default_emax(i64 p) { return adaptive_emax(p); }

double h_prime_local(i64 p, double alpha, int emax) {
    if (p <= 3) throw Error("h_prime_local: p > 3 required");
    auto shells = hprime_shells(p, 1, emax);
    double pd = static_cast<double>(p);
    double delta = 1.0 / (1.0 - std::pow(pd, -7.0));
    double s = 0.0;
    for (int f = 1; f <= emax; ++f) s += shells[f].get_d() * std::pow(pd, -f * alpha);
    // the final even shell can vanish identically, so gauge both parities
    double last = std::max(std::abs(shells[emax].get_d() * std::pow(pd, -emax * alpha)),
                           emax >= 2 ? std::abs(shells[emax - 1].get_d() *
                                                std::pow(pd, -(emax - 1) * alpha))
                                     : 0.0);
    if (last > 1e-12) throw TruncationWarning();
    return 1.0 + delta * s;
}

double aprime_local(i64 p, int k, int emax) {
    if (p <= 3) throw Error("aprime_local: p > 3 required");
    if (emax < 6) throw Error("aprime_local: emax >= 6 required");
    auto shells = hprime_shells(p, k, emax);
    double pd = static_cast<double>(p);
    double delta = 1.0 / (1.0 - std::pow(pd, -7.0));
    double h = 1.0;
    for (int f = 1; f <= emax; ++f) h += delta * shells[f].get_d();
    double last = std::max(std::abs(shells[emax].get_d()),
                           emax >= 2 ? std::abs(shells[emax - 1].get_d()) : 0.0);
    if (delta * last > 1e-12) throw TruncationWarning();
    return h * std::pow(1.0 - 1.0 / pd, k * (k - 1) / 2.0 - k);
}

EulerProductResult a1prime(double alpha, i64 pmax, const families::FamilySpec& spec,
                           int emax, i64 brute_below) {
    if (alpha <= -1.0 / 6.0 + 0.01) throw OutsideRegion();
    if (spec.variant != families::Variant::PositiveRank)
        throw Error("a1prime: positive-rank family spec required");
    spec.validate();

    EulerProductResult res;
    res.k = 1;
    res.pmax = pmax;

    // p = 2: trivial series factor, zeta local factor restored
    double value = 1.0 / (1.0 - std::pow(2.0, -1.0 - alpha));
    // p = 3: fixed-residue good Euler factor
    {
        bool good = false;
        i64 t3 = lambda_hat_rt(spec, 3, &good);
        if (!good) throw Error("a1prime: positive-rank residue class is bad at 3");
        double h3 = 1.0 / (1.0 - t3 * std::pow(3.0, -1.0 - alpha) + std::pow(3.0, -1.0 - 2.0 * alpha));
        value *= h3 / (1.0 - std::pow(3.0, -1.0 - alpha));
    }

    double c3_odd = 0.0;  // measured size of the e = 3 shell, |shell3| * p^{1/2}
    for (i64 p : arith::primes_up_to(pmax)) {
        if (p <= 3) continue;
        double pd = static_cast<double>(p);
        double h;
        if (p <= brute_below) {
            int em = std::max(emax, adaptive_emax(p));
            auto shells = hprime_shells(p, 1, em);
            double delta = 1.0 / (1.0 - std::pow(pd, -7.0));
            h = 1.0;
            for (int f = 1; f <= em; ++f) h += delta * shells[f].get_d() * std::pow(pd, -f * alpha);
            if (em >= 3)
                c3_odd = std::max(c3_odd, std::abs(shells[3].get_d()) * std::pow(pd, 1.5));
        } else {
            // closed forms: first shell exact, even shells vanish below the
            // first trace weight (negligible beyond), odd shells >= 3 tracked
            // in the tail estimate
            double delta = 1.0 / (1.0 - std::pow(pd, -7.0));
            double shell1 = (-1.0 / pd + 1.0 / (pd * pd)) * std::pow(pd, -alpha);
            h = 1.0 + delta * shell1;
        }
        value *= h / (1.0 - std::pow(pd, -1.0 - alpha));
    }
    res.value = value;

    // tail beyond pmax: local factors are 1 + O(p^{-2-alpha}) + O(p^{-3/2-3alpha})
    double beta = std::min(2.0 + alpha, 1.5 + 3.0 * alpha);
    double tail_product = 2.0 * std::pow(static_cast<double>(pmax), 1.0 - beta) /
                          ((beta - 1.0) * std::log(static_cast<double>(pmax)));
    // omitted odd shells for brute_below < p <= pmax
    double omitted = 0.0;
    if (pmax > brute_below && c3_odd > 0.0) {
        double b3 = 1.5 + 3.0 * alpha;
        omitted = c3_odd * std::pow(static_cast<double>(brute_below), 1.0 - b3) /
                  ((b3 - 1.0) * std::log(static_cast<double>(brute_below)));
    }
    res.tail_estimate = std::abs(value) * tail_product + omitted;
    return res;
}

}  // namespace ecm::euler
