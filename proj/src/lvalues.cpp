#include "ecm/lvalues.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>

#include "ecm/special.hpp"

namespace ecm::lvalues {

using std::complex;
namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<int8_t>& chi_table(i64 p) {
    static std::map<i64, std::vector<int8_t>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    return cache.emplace(p, arith::quadratic_character_table(p)).first->second;
}

// normalized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a)
double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) throw Error("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    if (a == 1.0) return std::exp(-x);
    if (x < a + 1.0) {
        // series for the lower function
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-17) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // Lentz continued fraction for the upper function
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// d/da Q(a, x) at a = 1
double gamma_q_da1(double x) {
    double e1 = (x > 700.0) ? 0.0 : -std::expint(-x);
    return std::exp(-x) * std::log(x) + e1 + special::euler_gamma() * std::exp(-x);
}

complex<double> clgamma(complex<double> z) {
    // Stirling with upward shift; Re(z) > 0 expected
    static const double b[] = {1.0 / 12,      -1.0 / 360,     1.0 / 1260,    -1.0 / 1680,
                               1.0 / 1188,    -691.0 / 360360, 1.0 / 156,    -3617.0 / 122400};
    complex<double> shift = 0.0;
    while (z.real() < 14.0) {
        shift += std::log(z);
        z += 1.0;
    }
    complex<double> lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi);
    complex<double> zp = z;
    for (double bi : b) {
        lg += bi / zp;
        zp *= z * z;
    }
    return lg - shift;
}

struct GaussianKernel {
    // contour data for V(alpha, y) = (1/2pi i) int e^{(w u)^2} Gamma(1+a+u)
    // / Gamma(1+a) y^{-u} du/u; the tail in y is Gaussian in log y
    static constexpr double kWidth = 0.35;
    double c = 1.5;
    double h = 1.0 / 32.0;
    int half_points = 384;
    std::vector<complex<double>> g;  // weights at t_k = k h, k >= 0

    explicit GaussianKernel(double alpha) {
        g.resize(half_points + 1);
        double lg0 = std::lgamma(1.0 + alpha);
        for (int k = 0; k <= half_points; ++k) {
            complex<double> u(c, k * h);
            complex<double> val =
                std::exp(kWidth * kWidth * u * u + clgamma(1.0 + alpha + u) - lg0) / u;
            g[k] = val;
        }
    }

    double eval(double y) const {
        // y^{-u} = y^{-c} e^{-it ln y}; rotate incrementally
        double ly = std::log(y);
        complex<double> rot(std::cos(h * ly), -std::sin(h * ly));
        complex<double> ph(1.0, 0.0);
        complex<double> acc = 0.5 * g[0];  // k = 0 counted once
        for (int k = 1; k <= half_points; ++k) {
            ph *= rot;
            acc += g[k] * ph;
        }
        return std::pow(y, -c) * (h / kPi) * acc.real();
    }

    // argument beyond which |V| stays under eps
    double y_cut(double eps) const {
        double y = 8.0;
        while (y < 1e9) {
            if (std::abs(eval(y)) < eps && std::abs(eval(1.3 * y)) < eps) return 1.3 * y;
            y *= 1.3;
        }
        throw NeedsMoreTerms();
    }
};

struct Candidate {
    i64 N = 0;
    int w = 0;
    i64 a2 = 0;
    int exp2 = 0;
    i64 a3 = 0;
    int exp3 = 0;
    double defect = 0;
};

std::vector<double> prime_power_lambda(i64 ap, i64 p, bool good, int jmax) {
    std::vector<double> lam(jmax + 1);
    lam[0] = 1.0;
    double sp = std::sqrt(static_cast<double>(p));
    if (good) {
        double x = ap / sp;
        if (jmax >= 1) lam[1] = x;
        for (int j = 2; j <= jmax; ++j) lam[j] = x * lam[j - 1] - lam[j - 2];
    } else {
        double x = ap / sp;
        for (int j = 1; j <= jmax; ++j) lam[j] = lam[j - 1] * x;
    }
    return lam;
}

}  // namespace

LSeries::LSeries(const curves::CurvePair& e, double target_defect)
    : e_(e), target_(target_defect) {
    // reduce obvious non-minimal prime powers
    i64 a = e_.a, b = e_.b;
    for (i64 p = 2; p <= 97; p = (p == 2 ? 3 : p + 2)) {
        i64 p4 = p * p * p * p, p6 = p4 * p * p;
        while (a % p4 == 0 && b % p6 == 0 && (a / p4 != 0 || b / p6 != 0)) {
            a /= p4;
            b /= p6;
        }
    }
    if (a != e_.a || b != e_.b) e_ = curves::CurvePair(a, b);
    resolve();
}

void LSeries::ensure_coeffs(i64 nmax) const {
    if (static_cast<i64>(lam_odd_.size()) > nmax) return;
    lam_odd_.assign(nmax + 1, 0.0);
    spf_.assign(nmax + 1, 0);
    for (i64 i = 2; i <= nmax; ++i) {
        if (spf_[i] == 0)
            for (i64 j = i; j <= nmax; j += i)
                if (spf_[j] == 0) spf_[j] = i;
    }
    lam_odd_[1] = 1.0;

    std::map<i64, std::vector<double>> ppow;
    i128 delta_bad = i128(4) * e_.a * e_.a * e_.a + i128(27) * e_.b * e_.b;
    int jmax = 2;
    while ((i64(1) << (2 * jmax)) < nmax) ++jmax;

    for (i64 n = 5; n <= nmax; ++n) {
        if (n % 2 == 0 || n % 3 == 0) continue;
        i64 p = spf_[n];
        i64 m = n, e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (m == 1) {
            auto it = ppow.find(p);
            if (it == ppow.end()) {
                auto tr = curves::ap_legendre(e_.a, e_.b, p, chi_table(p).data());
                bool good = static_cast<i64>(((delta_bad % p) + p) % p) != 0;
                int jm = 1;
                i64 pk = p;
                while (pk <= nmax) {
                    pk *= p;
                    ++jm;
                }
                it = ppow.emplace(p, prime_power_lambda(tr.ap, p, good, jm)).first;
            }
            lam_odd_[n] = it->second[e];
        } else {
            i64 pe = n / m;
            lam_odd_[n] = lam_odd_[pe] * lam_odd_[m];
        }
    }
}

double LSeries::afe(double alpha, double split, Kernel kernel, i64 n_conductor, int w,
                    i64 a2, int exp2, i64 a3, int exp3, i64* terms) const {
    double sqn = std::sqrt(static_cast<double>(n_conductor));
    double base1 = 2.0 * kPi / (split * sqn);
    double base2 = 2.0 * kPi * split / sqn;

    std::unique_ptr<GaussianKernel> gk1, gk2;
    if (kernel == Kernel::Gaussian) {
        gk1 = std::make_unique<GaussianKernel>(alpha);
        gk2 = std::make_unique<GaussianKernel>(-alpha);
    }

    // term cap from the kernel decay
    double ycut = (kernel == Kernel::Gaussian) ? gk1->y_cut(target_ * 1e-6)
                                               : std::log(1.0 / target_) + 14.0;
    i64 M = static_cast<i64>(ycut / std::min(base1, base2)) + 16;
    ensure_coeffs(M);

    std::vector<double> lam2 =
        prime_power_lambda(a2, 2, exp2 == 0, 34);
    if (exp2 >= 2)
        for (int j = 1; j <= 34; ++j) lam2[j] = 0.0;
    std::vector<double> lam3 =
        prime_power_lambda(a3, 3, exp3 == 0, 24);
    if (exp3 >= 2)
        for (int j = 1; j <= 24; ++j) lam3[j] = 0.0;

    double xfac = std::exp(std::lgamma(1.0 - alpha) - std::lgamma(1.0 + alpha)) *
                  std::pow(sqn / (2.0 * kPi), -2.0 * alpha);

    double s1 = 0.0, s2 = 0.0;
    for (i64 n = 1; n <= M; ++n) {
        int v2 = 0;
        i64 m = n;
        while ((m & 1) == 0) {
            m >>= 1;
            ++v2;
        }
        int v3 = 0;
        while (m % 3 == 0) {
            m /= 3;
            ++v3;
        }
        double lam = lam2[v2] * lam3[v3] * lam_odd_[m];
        if (lam == 0.0) continue;
        double nd = static_cast<double>(n);
        double k1 = (kernel == Kernel::Gaussian) ? gk1->eval(base1 * nd)
                                                 : gamma_q(1.0 + alpha, base1 * nd);
        double k2 = (kernel == Kernel::Gaussian) ? gk2->eval(base2 * nd)
                                                 : gamma_q(1.0 - alpha, base2 * nd);
        s1 += lam * std::pow(nd, -0.5 - alpha) * k1;
        s2 += lam * std::pow(nd, -0.5 + alpha) * k2;
    }
    if (terms) *terms = M;
    return s1 + w * xfac * s2;
}

double LSeries::candidate_defect(i64 n_cand, int w, i64 a2, int exp2, i64 a3,
                                 int exp3) const {
    double d = 0.0;
    for (double alpha : {0.0, 0.075}) {
        double v1 = afe(alpha, 0.75, Kernel::Exponential, n_cand, w, a2, exp2, a3, exp3);
        double v2 = afe(alpha, 4.0 / 3.0, Kernel::Exponential, n_cand, w, a2, exp2, a3, exp3);
        d += std::abs(v1 - v2);
    }
    return d;
}

void LSeries::resolve() {
    // odd part of the conductor for p >= 5 from the discriminant; primes with
    // a node (p coprime to a) enter once, cusps twice
    i64 dabs = std::llabs(e_.disc);
    auto fac = arith::factorize(dabs);
    odd_part_ = 1;
    bool three_bad = false;
    for (auto [p, ex] : fac) {
        (void)ex;
        if (p == 2) continue;
        if (p == 3) {
            three_bad = true;
            continue;
        }
        odd_part_ *= (e_.a % p == 0) ? p * p : p;
    }
    three_known_ = !three_bad;

    // v_p(N) <= v_p(disc) for every integral model, and good reduction at
    // p in {2, 3} requires a smaller model, so v_p(disc) >= 12 there
    int v2 = 0, v3 = 0;
    {
        i64 d = std::llabs(e_.disc);
        while (d % 2 == 0) {
            d /= 2;
            ++v2;
        }
        d = std::llabs(e_.disc);
        while (d % 3 == 0) {
            d /= 3;
            ++v3;
        }
    }

    std::vector<Candidate> cands;
    auto push2 = [&](i64 a3, int exp3, i64 three_part) {
        for (int w : {1, -1}) {
            if (v2 >= 12)
                for (i64 a2 = -2; a2 <= 2; ++a2)
                    cands.push_back({odd_part_ * three_part, w, a2, 0, a3, exp3, 0.0});
            for (i64 a2 : {1LL, -1LL})
                cands.push_back({2 * odd_part_ * three_part, w, a2, 1, a3, exp3, 0.0});
            i64 pw = 4;
            for (int e2 = 2; e2 <= std::min(8, v2); ++e2) {
                cands.push_back({pw * odd_part_ * three_part, w, 0, e2, a3, exp3, 0.0});
                pw *= 2;
            }
        }
    };

    if (three_known_) {
        auto tr3 = curves::ap_legendre(e_.a, e_.b, 3);
        push2(tr3.ap, 0, 1);
    } else {
        if (v3 >= 12)
            for (i64 a3 = -3; a3 <= 3; ++a3) push2(a3, 0, 1);
        for (i64 a3 : {1LL, -1LL}) push2(a3, 1, 3);
        i64 pw = 9;
        for (int e3 = 2; e3 <= std::min(5, v3); ++e3) {
            push2(0, e3, pw);
            pw *= 3;
        }
    }

    for (auto& c : cands)
        c.defect = candidate_defect(c.N, c.w, c.a2, c.exp2, c.a3, c.exp3);

    std::sort(cands.begin(), cands.end(),
              [](const Candidate& x, const Candidate& y) { return x.defect < y.defect; });
    const Candidate& best = cands.front();

    // conductor ambiguity: a rival with a different N ties when it is both
    // absolutely close and not separated from the winner by a clear factor
    for (const auto& c : cands) {
        if (c.N == best.N) continue;
        if (c.defect - best.defect < 1e-8 && c.defect < 100.0 * best.defect)
            throw AmbiguousConductor();
        break;
    }
    // root-number gap at the chosen arithmetic data
    double flip = candidate_defect(best.N, -best.w, best.a2, best.exp2, best.a3, best.exp3);
    gap_ = flip / std::max(best.defect, 1e-300);

    cond_.N = best.N;
    cond_.exp2 = best.exp2;
    cond_.exp3 = best.exp3;
    cond_.method = Method::SearchAt2;
    cond_.defect = best.defect;
    cond_.a2 = best.a2;
    cond_.a3 = best.a3;
    w_ = best.w;
}

double LSeries::tail_bound(double alpha, double split, i64 nmax) const {
    double sqn = std::sqrt(static_cast<double>(cond_.N));
    double base1 = 2.0 * kPi / (split * sqn);
    double base2 = 2.0 * kPi * split / sqn;
    double xfac = std::exp(std::lgamma(1.0 - alpha) - std::lgamma(1.0 + alpha)) *
                  std::pow(sqn / (2.0 * kPi), -2.0 * alpha);
    double t = 0.0;
    for (i64 n = nmax + 1;; ++n) {
        double nd = static_cast<double>(n);
        // |lambda(n)| <= d(n) <= 2 sqrt(n)
        double term = 2.0 * std::pow(nd, std::abs(alpha)) *
                      (gamma_q(1.0 + std::abs(alpha), base1 * nd) +
                       std::abs(xfac) * gamma_q(1.0 - std::abs(alpha), base2 * nd));
        t += term;
        if (term < 1e-4 * t || term < 1e-22) break;
        if (n > nmax + 2000000) throw NeedsMoreTerms();
    }
    return t;
}

CentralValue LSeries::value_shifted(double alpha) const {
    return value_shifted(alpha, 1.0, Kernel::Exponential);
}

CentralValue LSeries::value_shifted(double alpha, double split, Kernel kernel) const {
    if (std::abs(alpha) > 0.25) throw Error("value_shifted: |alpha| <= 1/4");
    CentralValue cv;
    cv.w = w_;
    i64 terms = 0;
    cv.value = afe(alpha, split, kernel, cond_.N, w_, cond_.a2, cond_.exp2, cond_.a3,
                   cond_.exp3, &terms);
    cv.terms_used = terms;
    double alt = afe(alpha, split * 1.21, kernel, cond_.N, w_, cond_.a2, cond_.exp2,
                     cond_.a3, cond_.exp3);
    double tail = (kernel == Kernel::Gaussian) ? target_ : tail_bound(alpha, split, terms);
    cv.defect = std::abs(cv.value - alt) + tail;
    if (cv.defect > std::max(target_ * 50.0, 1e-7)) throw NeedsMoreTerms();
    return cv;
}

CentralValue LSeries::derivative_central() const {
    const double split = 1.0;
    double sqn = std::sqrt(static_cast<double>(cond_.N));
    double base1 = 2.0 * kPi / (split * sqn);
    double base2 = 2.0 * kPi * split / sqn;
    double ycut = std::log(1.0 / target_) + 14.0;
    i64 M = static_cast<i64>(ycut / std::min(base1, base2)) + 16;
    ensure_coeffs(M);

    std::vector<double> lam2 = prime_power_lambda(cond_.a2, 2, cond_.exp2 == 0, 34);
    if (cond_.exp2 >= 2)
        for (int j = 1; j <= 34; ++j) lam2[j] = 0.0;
    std::vector<double> lam3 = prime_power_lambda(cond_.a3, 3, cond_.exp3 == 0, 24);
    if (cond_.exp3 >= 2)
        for (int j = 1; j <= 24; ++j) lam3[j] = 0.0;

    double xprime = 2.0 * special::euler_gamma() - 2.0 * std::log(sqn / (2.0 * kPi));
    double s1d = 0.0, s2 = 0.0, s2d = 0.0;
    for (i64 n = 1; n <= M; ++n) {
        int v2 = 0;
        i64 m = n;
        while ((m & 1) == 0) {
            m >>= 1;
            ++v2;
        }
        int v3 = 0;
        while (m % 3 == 0) {
            m /= 3;
            ++v3;
        }
        double lam = lam2[v2] * lam3[v3] * lam_odd_[m];
        if (lam == 0.0) continue;
        double nd = static_cast<double>(n);
        double w1 = lam / std::sqrt(nd);
        double ln = std::log(nd);
        double q1 = std::exp(-base1 * nd), q2 = std::exp(-base2 * nd);
        double d1 = gamma_q_da1(base1 * nd), d2 = gamma_q_da1(base2 * nd);
        s1d += w1 * (-ln * q1 + d1);
        s2 += w1 * q2;
        s2d += w1 * (ln * q2 - d2);
    }
    CentralValue cv;
    cv.w = w_;
    cv.terms_used = M;
    cv.value = s1d + w_ * (xprime * s2 + s2d);
    cv.defect = tail_bound(0.0, split, M) * (std::log(static_cast<double>(M)) + 3.0);
    return cv;
}

ConductorResult conductor(const curves::CurvePair& e) { return LSeries(e).conductor(); }

int root_number_numeric(const curves::CurvePair& e) {
    LSeries ls(e);
    if (ls.root_number_gap() < 10.0) throw IndeterminateSign();
    return ls.root_number();
}

}  // namespace ecm::lvalues
