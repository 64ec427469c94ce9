#include "ecm/chebyshev.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

namespace ecm::chebyshev {

double u_eval(int n, double x) {
    if (n < 0) throw Error("u_eval: negative index");
    if (n == 0) return 1.0;
    double um1 = 1.0, u = 2.0 * x;
    for (int i = 1; i < n; ++i) {
        double t = 2.0 * x * u - um1;
        um1 = u;
        u = t;
    }
    return u;
}

namespace {

// U_a * U_b = sum_{j=0}^{min(a,b)} U_{a+b-2j}
std::map<int, long long> mul_single(const std::map<int, long long>& poly, int e) {
    std::map<int, long long> out;
    for (auto [l, c] : poly) {
        int lo = std::min(l, e);
        for (int j = 0; j <= lo; ++j) out[l + e - 2 * j] += c;
    }
    return out;
}

}  // namespace

LinearizationTable linearize(std::span<const int> exps) {
    if (exps.empty()) throw Error("linearize: need at least one factor");
    LinearizationTable t;
    t.exps.assign(exps.begin(), exps.end());
    std::map<int, long long> poly{{0, 1}};
    for (int e : exps) {
        if (e < 0) throw Error("linearize: negative exponent");
        t.total += e;
        poly = mul_single(poly, e);
    }
    for (auto [l, c] : poly)
        if (c != 0) t.coeffs[l] = c;
    return t;
}

const Quadrature& gauss_legendre(int order) {
    static std::map<int, Quadrature> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    Quadrature q;
    q.x.resize(order);
    q.w.resize(order);
    int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev-angle initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        q.x[i] = -x;
        q.x[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        q.w[i] = w;
        q.w[order - 1 - i] = w;
    }
    return cache.emplace(order, std::move(q)).first->second;
}

double sato_tate_integral(const std::function<double(double)>& f, double tol) {
    const double pi = std::numbers::pi;
    double prev = 0.0;
    bool have_prev = false;
    for (int order = 32; order <= 8192; order *= 2) {
        const Quadrature& q = gauss_legendre(order);
        // theta = (pi/2)(x+1); the (2/pi) measure factor cancels the Jacobian
        double s = 0.0;
        for (int i = 0; i < order; ++i) {
            double theta = 0.5 * pi * (q.x[i] + 1.0);
            double st = std::sin(theta);
            s += q.w[i] * st * st * f(theta);
        }
        if (have_prev && std::abs(s - prev) <= tol) return s;
        prev = s;
        have_prev = true;
    }
    throw ToleranceNotMet();
}

double even_index_sum(double x, double t) {
    if (std::abs(t) >= 1.0) throw DivergentRegion();
    double t2 = t * t;
    return (1.0 + t2) / (1.0 + 2.0 * t2 * (1.0 - 2.0 * x * x) + t2 * t2);
}

}  // namespace ecm::chebyshev
