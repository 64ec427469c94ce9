#include "ecm/curves.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace ecm::curves {

using arith::legendre;
using arith::mod_floor;
using arith::mulmod;

CurvePair::CurvePair(i64 a_, i64 b_) : a(a_), b(b_) {
    i128 m = i128(4) * a * a * a + i128(27) * b * b;
    if (m == 0) throw SingularCurve();
    i128 d = i128(-16) * m;
    if (d > i128(INT64_MAX) || d < i128(INT64_MIN))
        throw Error("CurvePair: discriminant exceeds 64-bit range");
    disc = static_cast<i64>(d);
    c4 = -48 * a;
    c6 = -864 * b;
}

FrobeniusTrace ap_legendre(i64 a, i64 b, i64 p) {
    if (p == 2) return {2, 0, false};
    auto chi = arith::quadratic_character_table(p);
    return ap_legendre(a, b, p, chi.data());
}

FrobeniusTrace ap_legendre(i64 a, i64 b, i64 p, const int8_t* chi) {
    if (p == 2) return {2, 0, false};
    i64 ar = mod_floor(a, p), br = mod_floor(b, p);
    i64 s = 0;
    for (i64 x = 0; x < p; ++x) {
        i64 fx = (mulmod(mulmod(x, x, p) + ar, x, p) + br) % p;
        s += chi[fx];
    }
    i64 m = mod_floor(4 * mulmod(mulmod(ar, ar, p), ar, p) + 27 * mulmod(br, br, p), p);
    return {p, -s, m != 0};
}

i64 count_points(i64 a, i64 b, i64 p) {
    if (p <= 2) throw Error("count_points: requires p > 2");
    auto chi = arith::quadratic_character_table(p);
    i64 ar = mod_floor(a, p), br = mod_floor(b, p);
    i64 n = 1;  // point at infinity
    for (i64 x = 0; x < p; ++x) {
        i64 fx = (mulmod(mulmod(x, x, p) + ar, x, p) + br) % p;
        n += 1 + chi[fx];
    }
    return n;
}

mpz_class hat_lambda(i64 ap, i64 p, int j, bool good) {
    if (j < 0) throw Error("hat_lambda: negative exponent");
    if (!good) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::llabs(ap)),
                      static_cast<unsigned long>(j));
        if (ap < 0 && (j & 1)) r = -r;
        return r;
    }
    mpz_class gm1 = 1, g = to_mpz(ap), t;
    if (j == 0) return gm1;
    for (int i = 1; i < j; ++i) {
        t = to_mpz(ap) * g - to_mpz(p) * gm1;
        gm1 = g;
        g = t;
    }
    return g;
}

bool good_at(const CurvePair& c, i64 p) {
    if (p == 2) return false;
    i128 m = i128(4) * c.a * c.a * c.a + i128(27) * c.b * c.b;
    return static_cast<i64>(((m % p) + p) % p) != 0;
}

bool minimal_at(const CurvePair& c, i64 p) {
    auto divides_pow = [&](i64 v, int e) {
        i128 q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        return i128(v) % q == 0;
    };
    if (!divides_pow(c.disc, 12)) return true;
    if (!divides_pow(c.c4, 4)) return true;
    if (!divides_pow(c.c6, 6)) return true;
    return false;
}

double lambda_n(const CurvePair& c, i64 n) {
    if (n <= 0) throw Error("lambda_n: n must be >= 1");
    double out = 1.0;
    for (auto [p, e] : arith::factorize(n)) {
        if (p == 2) return 0.0;  // the short model is singular mod 2
        auto tr = ap_legendre(c.a, c.b, p);
        double lam_p = static_cast<double>(tr.ap) / std::sqrt(static_cast<double>(p));
        bool good = good_at(c, p);
        if (good) {
            // U_e(lam_p / 2) by the three-term recurrence
            double um1 = 1.0, u = lam_p;
            if (e == 0) { continue; }
            for (int i = 1; i < e; ++i) {
                double t = lam_p * u - um1;
                um1 = u;
                u = t;
            }
            out *= u;
        } else {
            out *= std::pow(lam_p, e);
        }
    }
    return out;
}

int root_number_formula(i64 a, i64 b, int eps2) {
    if (eps2 != 1 && eps2 != -1) throw Error("root_number_formula: eps2 must be +-1");
    if (b == 0 || b % 2 == 0 || b % 3 == 0) throw UndefinedSymbol();
    i128 m128 = i128(4) * a * a * a + i128(27) * b * b;
    if (m128 == 0) throw SingularCurve();
    if (m128 > INT64_MAX || m128 < INT64_MIN) throw Error("root_number_formula: overflow");
    i64 m = std::llabs(static_cast<i64>(m128));
    int mu = arith::mobius(m);
    if (mu == 0) throw NotSquarefree();
    i64 n = 3 * std::llabs(b);
    if (std::gcd(mod_floor(a, n), n) != 1) throw UndefinedSymbol();
    int jac = arith::jacobi(a, n);
    int chi4 = (mod_floor(b, 4) == 1) ? 1 : -1;
    int sign_a = (mod_floor(a, 2) == 0) ? -1 : 1;  // (-1)^(a+1)
    return mu * jac * chi4 * sign_a * eps2;
}

bool is_torsion_candidate(i64 a, i64 b) {
    mpz_class num = 4 * mpz_class(static_cast<long>(a));
    num *= mpz_class(static_cast<long>(a));
    num *= mpz_class(static_cast<long>(a));
    if (b == 0) return num == 0;
    mpz_class bb = mpz_class(static_cast<long>(b)) * mpz_class(static_cast<long>(b));
    return mpz_divisible_p(num.get_mpz_t(), bb.get_mpz_t()) != 0;
}

}  // namespace ecm::curves
