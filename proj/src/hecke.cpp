#include "ecm/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "ecm/curves.hpp"

namespace ecm::hecke {

ClassNumberValue class_number_vw(i64 D) {
    if (D >= 0) throw BadDiscriminant();
    i64 r = arith::mod_floor(D, 4);
    if (r != 0 && r != 1) throw BadDiscriminant();

    static std::map<i64, mpq_class> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(D);
        if (it != cache.end()) return {D, it->second};
    }

    i64 absD = -D;
    mpq_class total = 0;
    // reduced forms (a,b,c): b^2 - 4ac = D, -a < b <= a <= c, b >= 0 if a == c
    for (i64 b = (r == 0) ? 0 : 1; 3 * b * b <= absD; b += 2) {
        i64 m = (b * b + absD) / 4;  // = a*c
        for (i64 a = std::max<i64>(b, 1); a * a <= m; ++a) {
            if (m % a != 0) continue;
            i64 c = m / a;
            mpq_class w;
            if (a == b && b == c) w = mpq_class(1, 3);        // multiple of x^2+xy+y^2
            else if (b == 0 && a == c) w = mpq_class(1, 2);   // multiple of x^2+y^2
            else w = 1;
            // forms with 0 < b < a and a < c pair with their -b mirror
            if (b > 0 && b < a && a < c) w *= 2;
            total += w;
        }
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache[D] = total;
    return {D, total};
}

int dim_cusp_forms(int weight) {
    if (weight < 4 || weight % 2 != 0) throw Unsupported("dim_cusp_forms: even weight >= 4");
    int d = weight / 12;
    if (weight % 12 == 2) --d;
    return d;
}

TraceValue trace_eichler_selberg(int weight, i64 p) {
    if (weight < 4 || weight % 2 != 0)
        throw Unsupported("trace_eichler_selberg: even weight >= 4 required");
    if (p <= 3 || !arith::is_prime(p))
        throw Unsupported("trace_eichler_selberg: prime p > 3 required");

    static std::map<std::pair<int, i64>, TraceValue> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find({weight, p});
        if (it != cache.end()) return it->second;
    }

    int j = weight - 2;
    mpq_class acc = 0;
    i64 tmax = static_cast<i64>(std::floor(2.0 * std::sqrt(static_cast<double>(p))));
    while (tmax * tmax >= 4 * p) --tmax;
    for (i64 t = 0; t <= tmax; ++t) {
        mpz_class g = curves::hat_lambda(t, p, j, true);
        mpq_class term = mpq_class(g) * class_number_vw(t * t - 4 * p).value;
        acc += (t == 0) ? term : 2 * term;  // G_j even in t for even j
    }
    mpq_class tr = -1 - acc / 2;
    tr.canonicalize();
    if (tr.get_den() != 1) throw Error("trace_eichler_selberg: non-integral trace");

    TraceValue out;
    out.weight = weight;
    out.p = p;
    out.trace = tr.get_num();
    out.scaled = out.trace.get_d() / std::pow(static_cast<double>(p), (weight - 1) / 2.0);
    std::lock_guard<std::mutex> lock(mtx);
    cache[{weight, p}] = out;
    return out;
}

namespace {

using Series = std::vector<mpz_class>;  // coefficients of q^0 .. q^{N}

Series mul(const Series& a, const Series& b, size_t n) {
    Series out(n + 1, mpz_class(0));
    for (size_t i = 0; i < a.size() && i <= n; ++i) {
        if (a[i] == 0) continue;
        size_t jmax = std::min(b.size() - 1, n - i);
        for (size_t j = 0; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// eta^3 / q^{1/8} = sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}
Series eta_cubed(size_t n) {
    Series s(n + 1, mpz_class(0));
    for (i64 k = 0;; ++k) {
        i64 e = k * (k + 1) / 2;
        if (static_cast<size_t>(e) > n) break;
        s[e] += to_mpz((k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1));
    }
    return s;
}

Series eta_pow24(size_t n) {
    Series e3 = eta_cubed(n);
    Series e6 = mul(e3, e3, n);
    Series e12 = mul(e6, e6, n);
    return mul(e12, e12, n);
}

Series sigma_series(size_t n, int k, i64 scale, i64 constant) {
    // constant + scale * sum_{m>=1} sigma_k(m) q^m
    Series s(n + 1, mpz_class(0));
    s[0] = to_mpz(constant);
    for (size_t d = 1; d <= n; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), d, static_cast<unsigned long>(k));
        for (size_t m = d; m <= n; m += d) s[m] += to_mpz(scale) * dk;
    }
    return s;
}

struct CuspTable {
    std::mutex mtx;
    size_t bound = 0;
    std::map<int, Series> forms;  // weight -> coefficients, forms[w][n] = a_n

    void ensure(size_t n) {
        std::lock_guard<std::mutex> lock(mtx);
        if (n <= bound && !forms.empty()) return;
        size_t nn = std::max<size_t>(64, n);
        // delta[m] = coefficient of q^{m+1} in the weight-12 form
        Series delta = eta_pow24(nn);
        Series e4 = sigma_series(nn, 3, 240, 1);
        Series e6 = sigma_series(nn, 5, -504, 1);
        Series e8 = mul(e4, e4, nn);
        Series e10 = mul(e4, e6, nn);
        Series e14 = mul(e8, e6, nn);
        auto shift = [&](const Series& s) {
            Series out(nn + 2, mpz_class(0));
            for (size_t i = 0; i + 1 <= nn + 1 && i < s.size(); ++i) out[i + 1] = s[i];
            return out;
        };
        forms[12] = shift(delta);
        forms[16] = shift(mul(delta, e4, nn));
        forms[18] = shift(mul(delta, e6, nn));
        forms[20] = shift(mul(delta, e8, nn));
        forms[22] = shift(mul(delta, e10, nn));
        forms[26] = shift(mul(delta, e14, nn));
        bound = nn;
    }
};

CuspTable& cusp_table() {
    static CuspTable t;
    return t;
}

}  // namespace

mpz_class cusp_form_coefficient(int weight, i64 n) {
    if (n <= 0 || n > 10000) throw OutOfRange();
    if (weight != 12 && weight != 16 && weight != 18 && weight != 20 && weight != 22 &&
        weight != 26)
        throw Unsupported("cusp_form_coefficient: space is not one-dimensional");
    auto& t = cusp_table();
    t.ensure(static_cast<size_t>(n));
    std::lock_guard<std::mutex> lock(t.mtx);
    return t.forms[weight][static_cast<size_t>(n)];
}

mpz_class tau_oracle(i64 n) { return cusp_form_coefficient(12, n); }

}  // namespace ecm::hecke
