#include "ecm/special.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>

namespace ecm::special {

namespace {

// B_2, B_4, ..., B_24
constexpr std::array<long double, 12> kBernoulli = {
    1.0L / 6,          -1.0L / 30,         1.0L / 42,          -1.0L / 30,
    5.0L / 66,         -691.0L / 2730,     7.0L / 6,           -3617.0L / 510,
    43867.0L / 798,    -174611.0L / 330,   854513.0L / 138,    -236364091.0L / 2730};

constexpr double kLogGlaisher = 0.2487544770337842625429258820;  // log A = 1/12 - zeta'(-1)

}  // namespace

double zeta(double s) {
    if (s <= 1.0) throw Error("zeta: implemented for real s > 1");
    const int N = 24;
    const int K = 10;
    long double sum = 0.0L;
    for (int n = 1; n <= N; ++n) sum += std::pow(static_cast<long double>(n), -(long double)s);
    long double Nl = N;
    sum += std::pow(Nl, 1.0L - s) / (s - 1.0L);
    sum -= 0.5L * std::pow(Nl, -(long double)s);
    long double rising = s;  // s(s+1)...(s+2k-2)
    long double npow = std::pow(Nl, -(long double)s - 1.0L);
    long double fact = 2.0L;  // (2k)!
    for (int k = 1; k <= K; ++k) {
        sum += kBernoulli[k - 1] / fact * rising * npow;
        rising *= (s + 2.0L * k - 1.0L) * (s + 2.0L * k);
        npow /= Nl * Nl;
        fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
    }
    return static_cast<double>(sum);
}

double zeta_partial(double s, const std::vector<i64>& excluded) {
    double z = zeta(s);
    for (i64 p : excluded) z *= 1.0 - std::pow(static_cast<double>(p), -s);
    return z;
}

std::vector<double> zeta_laurent(int order) {
    if (order < 0 || order > 6) throw Error("zeta_laurent: order must be in [0, 6]");
    const int M = order;
    const int N = 300;
    const int K = 10;
    const long double lnN = std::log(static_cast<long double>(N));

    // Taylor coefficients (in z) of zeta(1+z) - 1/z, truncated at degree M
    std::vector<long double> F(M + 1, 0.0L);

    // sum_{n<=N} n^{-1-z} = sum (1/n) e^{-z ln n}
    for (int n = 1; n <= N; ++n) {
        long double ln = std::log(static_cast<long double>(n));
        long double term = 1.0L / n;  // (-ln n)^m / (m! n)
        for (int m = 0; m <= M; ++m) {
            F[m] += term;
            term *= -ln / (m + 1);
        }
    }
    // (N^{-z} - 1)/z
    {
        long double term = -lnN;  // (-lnN)^{m+1}/(m+1)!
        for (int m = 0; m <= M; ++m) {
            F[m] += term;
            term *= -lnN / (m + 2);
        }
    }
    // -(1/2) N^{-1-z}
    {
        long double term = -0.5L / N;
        for (int m = 0; m <= M; ++m) {
            F[m] += term;
            term *= -lnN / (m + 1);
        }
    }
    // Bernoulli tail: sum_k B_2k/(2k)! N^{-2k} e^{-z lnN} prod_{i=1}^{2k-1} (i+z)
    {
        long double fact = 2.0L;
        long double npow = 1.0L / (static_cast<long double>(N) * N);
        for (int k = 1; k <= K; ++k) {
            // polynomial prod_{i=1}^{2k-1} (i+z), coefficients up to degree M
            std::vector<long double> poly(M + 1, 0.0L);
            poly[0] = 1.0L;
            for (int i = 1; i <= 2 * k - 1; ++i) {
                for (int m = M; m >= 1; --m) poly[m] = poly[m] * i + poly[m - 1];
                poly[0] *= i;
            }
            // times e^{-z lnN}
            std::vector<long double> expo(M + 1);
            expo[0] = 1.0L;
            for (int m = 1; m <= M; ++m) expo[m] = expo[m - 1] * (-lnN) / m;
            long double scale = kBernoulli[k - 1] / fact * npow;
            for (int m = 0; m <= M; ++m) {
                long double conv = 0.0L;
                for (int i = 0; i <= m; ++i) conv += poly[i] * expo[m - i];
                F[m] += scale * conv;
            }
            fact *= (2.0L * k + 1.0L) * (2.0L * k + 2.0L);
            npow /= static_cast<long double>(N) * N;
        }
    }

    std::vector<double> gammas(M + 1);
    long double mfact = 1.0L;
    for (int m = 0; m <= M; ++m) {
        if (m > 0) mfact *= m;
        long double g = F[m] * mfact;
        if (m % 2 == 1) g = -g;
        gammas[m] = static_cast<double>(g);
    }
    return gammas;
}

double euler_gamma() {
    static const double g = zeta_laurent(0)[0];
    return g;
}

double log_gamma(double x) {
    if (x <= 0) throw Error("log_gamma: positive argument required");
    return std::lgamma(x);
}

double log_barnes_g(double x) {
    if (x <= 0) throw Error("log_barnes_g: positive argument required");
    double shift_sum = 0.0;
    double y = x;
    while (y < 22.0) {
        shift_sum += std::lgamma(y);  // G(y+1) = Gamma(y) G(y)
        y += 1.0;
    }
    // large-argument expansion at y = z+1
    long double z = y - 1.0;
    long double lg = 0.25L * z * z + z * std::lgamma(static_cast<double>(z + 1.0L)) -
                     (0.5L * z * (z + 1.0L) + 1.0L / 12.0L) * std::log(z) - kLogGlaisher;
    long double zpow = z * z;
    for (int k = 1; k <= 8; ++k) {
        lg += kBernoulli[k] / (2.0L * k * (2.0L * k + 1.0L) * (2.0L * k + 2.0L)) / zpow;
        zpow *= z * z;
    }
    return static_cast<double>(lg) - shift_sum;
}

GkValue g_k(double k) {
    if (k <= -0.5) throw PoleRegion();
    double lg = 0.5 * k * std::log(2.0) + log_barnes_g(1.0 + k) +
                0.5 * std::lgamma(1.0 + 2.0 * k) - 0.5 * log_barnes_g(1.0 + 2.0 * k) -
                0.5 * std::lgamma(1.0 + k);
    return {k, std::exp(lg)};
}

double g_k_factorial(int k) {
    if (k < 0) throw Error("g_k_factorial: nonnegative integer k");
    mpq_class v(1);
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(k));
    v *= mpq_class(two_pow);
    for (int j = 1; j <= k - 1; ++j) {
        mpz_class fj, f2j;
        mpz_fac_ui(fj.get_mpz_t(), static_cast<unsigned long>(j));
        mpz_fac_ui(f2j.get_mpz_t(), static_cast<unsigned long>(2 * j));
        v *= mpq_class(fj) / mpq_class(f2j);
    }
    return v.get_d();
}

}  // namespace ecm::special
