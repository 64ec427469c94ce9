#include "ecm/orthogonality.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "ecm/chebyshev.hpp"
#include "ecm/curves.hpp"
#include "ecm/hecke.hpp"

namespace ecm::orthogonality {

using arith::mod_floor;
using arith::mulmod;

namespace {

mpz_class pow_z(i64 p, i64 e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

int total_exponent(std::span<const int> exps) {
    int f = 0;
    for (int e : exps) {
        if (e < 0) throw Error("exponent tuple must be nonnegative");
        f += e;
    }
    return f;
}

// trace of Frobenius from a precomputed x^3 + ax table row
i64 trace_from_row(const std::vector<i64>& xrow, i64 b, i64 p, const int8_t* chi) {
    i64 s = 0;
    for (i64 x = 0; x < p; ++x) {
        i64 v = xrow[x] + b;
        if (v >= p) v -= p;
        s += chi[v];
    }
    return -s;
}

std::vector<i64> cubic_row(i64 a, i64 p) {
    std::vector<i64> row(p);
    for (i64 x = 0; x < p; ++x) row[x] = (mulmod(mulmod(x, x, p) + a, x, p)) % p;
    return row;
}

}  // namespace

LocalSum qstar_brute(i64 p, std::span<const int> exps) {
    if (!arith::is_prime(p)) throw Error("qstar_brute: p must be prime");
    if (exps.empty()) throw Error("qstar_brute: k >= 1 required");
    int f = total_exponent(exps);

    LocalSum out;
    out.p = p;
    out.exps.assign(exps.begin(), exps.end());
    out.source = Source::BruteForce;

    if (p == 2) {  // lambda(2^e) = 0 for e >= 1
        out.value = (f == 0) ? SqrtRational(1) : SqrtRational();
        return out;
    }

    auto chi = arith::quadratic_character_table(p);
    mpz_class S = 0;
    for (i64 a = 0; a < p; ++a) {
        auto row = cubic_row(a, p);
        i64 d3 = mulmod(mulmod(a, a, p), a, p);
        for (i64 b = 0; b < p; ++b) {
            i64 m = (4 * d3 + 27 * mulmod(b, b, p)) % p;
            bool good = m != 0;
            i64 t = trace_from_row(row, b, p, chi.data());
            mpz_class prod = 1;
            for (int e : exps) {
                if (e == 0) continue;
                prod *= curves::hat_lambda(t, p, e, good);
                if (prod == 0) break;
            }
            S += prod;
        }
    }
    out.value = SqrtRational(mpq_class(S) / mpq_class(pow_z(p, 2))) *
                SqrtRational::half_power(p, -f);
    return out;
}

mpz_class q_sum(i64 p, int j) {
    if (p <= 3 || !arith::is_prime(p)) throw Unsupported("q_sum: prime p > 3 required");
    if (j < 1) throw Error("q_sum: j >= 1 required");
    auto chi = arith::quadratic_character_table(p);
    mpz_class S = 0;
    for (i64 a = 0; a < p; ++a) {
        auto row = cubic_row(a, p);
        i64 d3 = mulmod(mulmod(a, a, p), a, p);
        for (i64 b = 0; b < p; ++b) {
            bool good = (4 * d3 + 27 * mulmod(b, b, p)) % p != 0;
            S += curves::hat_lambda(trace_from_row(row, b, p, chi.data()), p, j, good);
        }
    }
    return S;
}

LocalSum qstar_closed(i64 p, std::span<const int> exps) {
    if (p <= 3 || !arith::is_prime(p)) throw Unsupported("qstar_closed: prime p > 3 required");
    if (exps.empty()) throw Error("qstar_closed: k >= 1 required");
    int f = total_exponent(exps);

    LocalSum out;
    out.p = p;
    out.exps.assign(exps.begin(), exps.end());
    out.source = Source::ClosedForm;

    if (f % 2 == 1) {
        out.value = SqrtRational();
        return out;
    }
    if (f == 0) {
        out.value = SqrtRational(1 - mpq_class(1) / mpq_class(pow_z(p, 2)));
        return out;
    }

    auto lin = chebyshev::linearize(exps);
    mpq_class acc = to_mpz(lin.at(0)) * mpq_class(to_mpz(p - 1)) / mpq_class(to_mpz(p));
    for (auto [l, cl] : lin.coeffs) {
        if (l == 0) continue;
        // c_l [ (p-1) Tr_{l+2}(p) / p^{(l+4)/2} + (p-1) / p^{2+l/2} ]
        mpq_class tr_term =
            mpq_class(to_mpz(p - 1)) * mpq_class(hecke::trace_eichler_selberg(l + 2, p).trace) /
            mpq_class(pow_z(p, (l + 4) / 2));
        mpq_class extra = mpq_class(to_mpz(p - 1)) / mpq_class(pow_z(p, 2 + l / 2));
        acc -= mpq_class(to_mpz(cl)) * (tr_term + extra);
    }
    acc += mpq_class(to_mpz(p - 1)) / mpq_class(pow_z(p, 2 + f / 2));
    acc.canonicalize();
    out.value = SqrtRational(acc);
    return out;
}

LocalSum qsquare_brute(i64 p, std::span<const int> exps) {
    if (!arith::is_prime(p)) throw Error("qsquare_brute: p must be prime");
    if (exps.empty()) throw Error("qsquare_brute: k >= 1 required");
    int f = total_exponent(exps);

    LocalSum out;
    out.p = p;
    out.exps.assign(exps.begin(), exps.end());
    out.source = Source::BruteForce;

    if (p == 2) {
        out.value = (f == 0) ? SqrtRational(1) : SqrtRational();
        return out;
    }

    auto chi = arith::quadratic_character_table(p);
    mpz_class S = 0;
    for (i64 a = 0; a < p; ++a) {
        auto row = cubic_row(a, p);
        i64 d3 = mulmod(mulmod(a, a, p), a, p);
        for (i64 b = 0; b < p; ++b) {
            i64 c = mulmod(b, b, p);
            bool good = (4 * d3 + 27 * mulmod(c, c, p)) % p != 0;
            i64 t = trace_from_row(row, c, p, chi.data());
            mpz_class prod = 1;
            for (int e : exps) {
                if (e == 0) continue;
                prod *= curves::hat_lambda(t, p, e, good);
                if (prod == 0) break;
            }
            S += prod;
        }
    }
    out.value = SqrtRational(mpq_class(S) / mpq_class(pow_z(p, 2))) *
                SqrtRational::half_power(p, -f);
    return out;
}

SqrtRational qstar_brute_composite(std::span<const i64> n) {
    if (n.empty()) throw Error("qstar_brute_composite: k >= 1 required");
    i64 l = 1;
    for (i64 ni : n) {
        if (ni <= 0) throw Error("qstar_brute_composite: entries must be >= 1");
        l = std::lcm(l, ni);
    }
    i64 nstar = arith::radical(l);
    if (nstar == 1) return SqrtRational(1);

    // factor each n_i over the primes of nstar
    auto primes = arith::factorize(nstar);
    std::vector<std::vector<int>> exps(n.size(), std::vector<int>(primes.size(), 0));
    int ftot = 0;
    for (size_t i = 0; i < n.size(); ++i) {
        i64 m = n[i];
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            while (m % primes[pi].first == 0) {
                m /= primes[pi].first;
                ++exps[i][pi];
                ++ftot;
            }
        }
        if (m != 1) throw Error("qstar_brute_composite: internal factor mismatch");
    }

    std::vector<std::vector<int8_t>> chis;
    for (auto& [p, e] : primes) {
        (void)e;
        chis.push_back(arith::quadratic_character_table(p));
    }

    mpz_class S = 0;
    for (i64 a = 0; a < nstar; ++a) {
        for (i64 b = 0; b < nstar; ++b) {
            mpz_class prod = 1;
            for (size_t pi = 0; pi < primes.size() && prod != 0; ++pi) {
                i64 p = primes[pi].first;
                if (p == 2) {
                    for (size_t i = 0; i < n.size(); ++i)
                        if (exps[i][pi] > 0) { prod = 0; break; }
                    continue;
                }
                auto tr = curves::ap_legendre(a, b, p, chis[pi].data());
                for (size_t i = 0; i < n.size(); ++i) {
                    int e = exps[i][pi];
                    if (e == 0) continue;
                    prod *= curves::hat_lambda(tr.ap, p, e, tr.good);
                    if (prod == 0) break;
                }
            }
            S += prod;
        }
    }

    SqrtRational v(mpq_class(S) / mpq_class(mpz_class(static_cast<long>(nstar)) *
                                            mpz_class(static_cast<long>(nstar))));
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        int fp = 0;
        for (size_t i = 0; i < n.size(); ++i) fp += exps[i][pi];
        v *= SqrtRational::half_power(primes[pi].first, -fp);
    }
    return v;
}

SqrtRational assemble_qstar_rt(std::span<const i64> n, const families::FamilySpec& spec) {
    spec.validate();
    const i64 sixq = 6 * spec.q;
    SqrtRational value(1);

    // fixed-residue factors at p | 6q
    for (size_t i = 0; i < n.size(); ++i) {
        i64 m = n[i];
        if (m <= 0) throw Error("assemble_qstar_rt: entries must be >= 1");
        for (auto [p, e] : arith::factorize(m)) {
            if (sixq % p != 0) continue;
            if (p == 2) {
                if (e > 0) return SqrtRational();  // lambda(2^e) = 0
                continue;
            }
            auto tr = curves::ap_legendre(spec.r, spec.t, p);
            i128 bad = i128(4) * spec.r * spec.r * spec.r + i128(27) * spec.t * spec.t;
            bool good = static_cast<i64>(((bad % p) + p) % p) != 0;
            value *= SqrtRational(mpq_class(curves::hat_lambda(tr.ap, p, e, good))) *
                     SqrtRational::half_power(p, -e);
        }
    }

    // prime-local averages away from 6q, with the sieve factor
    std::map<i64, std::vector<int>> local;  // p -> exponent tuple
    for (size_t i = 0; i < n.size(); ++i) {
        for (auto [p, e] : arith::factorize(n[i])) {
            if (sixq % p == 0) continue;
            auto& v = local[p];
            if (v.empty()) v.assign(n.size(), 0);
            v[i] = e;
        }
    }
    for (auto& [p, exps] : local) {
        value *= qstar_brute(p, exps).value;
        mpq_class sieve = mpq_class(1) - mpq_class(1) / mpq_class(pow_z(p, 10));
        value *= SqrtRational(mpq_class(1) / sieve);
    }
    return value;
}

namespace {

i64 find_generator(i64 p) {
    auto fac = arith::factorize(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto& [q, e] : fac) {
            (void)e;
            if (arith::powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw Error("find_generator: no generator found");
}

}  // namespace

const TwistClasses& TwistClasses::get(i64 p) {
    static std::map<i64, TwistClasses> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;

    if (p <= 3 || !arith::is_prime(p)) throw Unsupported("TwistClasses: prime p > 3 required");
    TwistClasses tc;
    tc.p = p;
    auto chi = arith::quadratic_character_table(p);

    auto trace_of = [&](i64 a, i64 c) {
        return curves::ap_legendre(a, c, p, chi.data()).ap;
    };

    // generic j-invariants: two quadratic-twist classes each
    i64 j1728 = mod_floor(1728, p);
    for (i64 j = 1; j < p; ++j) {
        if (j == j1728) continue;
        i64 u = mod_floor(j1728 - j, p);           // 1728 - j
        i64 aj = mulmod(3 * j % p, u, p);          // 3 j (1728-j)
        i64 cj = mulmod(2 * j % p, mulmod(u, u, p), p);
        i64 t = trace_of(aj, cj);
        int s = chi[cj];
        tc.classes.push_back({(p - 1) / 2, (p - 1) / 2 * (1 + s), t, true});
        tc.classes.push_back({(p - 1) / 2, (p - 1) / 2 * (1 - s), -t, true});
    }

    // j = 0: curves y^2 = x^3 + c
    if (p % 3 == 2) {
        tc.classes.push_back({p - 1, p - 1, 0, true});
    } else {
        i64 g = find_generator(p);
        i64 c = 1;
        for (int m = 0; m < 6; ++m) {
            i64 t = trace_of(0, c);
            i64 cnt = (p - 1) / 6;
            tc.classes.push_back({cnt, cnt * (1 + (m % 2 == 0 ? 1 : -1)), t, true});
            c = mulmod(c, g, p);
        }
    }

    // j = 1728: curves y^2 = x^3 + ax (b = 0 contributes one point each)
    if (p % 4 == 3) {
        tc.classes.push_back({p - 1, p - 1, 0, true});
    } else {
        i64 g = find_generator(p);
        i64 a = 1;
        for (int m = 0; m < 4; ++m) {
            i64 t = trace_of(a, 0);
            i64 cnt = (p - 1) / 4;
            tc.classes.push_back({cnt, cnt, t, true});
            a = mulmod(a, g, p);
        }
    }

    // discriminant-zero locus (a, c) = (-3s^2, 2s^3), s != 0: trace chi(3s)
    {
        int chi3 = chi[mod_floor(3, p)];
        int chi2 = chi[mod_floor(2, p)];
        tc.classes.push_back({(p - 1) / 2, (p - 1) / 2 * (1 + chi2), chi3, false});
        tc.classes.push_back({(p - 1) / 2, (p - 1) / 2 * (1 - chi2), -chi3, false});
    }
    // (0, 0)
    tc.classes.push_back({1, 1, 0, false});

    i64 tot_ac = 0, tot_b = 0;
    for (auto& c : tc.classes) {
        tot_ac += c.count_ac;
        tot_b += c.count_b;
    }
    if (tot_ac != p * p || tot_b != p * p)
        throw Error("TwistClasses: class counts fail to partition F_p^2");

    return cache.emplace(p, std::move(tc)).first->second;
}

SqrtRational TwistClasses::square_family_sum(std::span<const int> exps) const {
    int f = total_exponent(exps);
    mpz_class S = 0;
    for (const auto& cls : classes) {
        if (cls.count_b == 0) continue;
        mpz_class prod = 1;
        for (int e : exps) {
            if (e == 0) continue;
            prod *= curves::hat_lambda(cls.trace, p, e, cls.good);
            if (prod == 0) break;
        }
        S += to_mpz(cls.count_b) * prod;
    }
    return SqrtRational(mpq_class(S)) * SqrtRational::half_power(p, -f);
}

std::vector<SqrtRational> TwistClasses::square_power_sums(int emax) const {
    std::vector<mpz_class> acc(emax + 1, mpz_class(0));
    for (const auto& cls : classes) {
        if (cls.count_b == 0) continue;
        mpz_class cnt = to_mpz(cls.count_b);
        if (cls.good) {
            mpz_class gm1 = 1, g = to_mpz(cls.trace), t;
            acc[0] += cnt;
            for (int e = 1; e <= emax; ++e) {
                acc[e] += cnt * g;
                t = to_mpz(cls.trace) * g - to_mpz(p) * gm1;
                gm1 = g;
                g = t;
            }
        } else {
            mpz_class pw = 1;
            for (int e = 0; e <= emax; ++e) {
                acc[e] += cnt * pw;
                pw *= to_mpz(cls.trace);
                if (pw == 0) break;
            }
        }
    }
    std::vector<SqrtRational> out(emax + 1);
    for (int e = 0; e <= emax; ++e)
        out[e] = SqrtRational(mpq_class(acc[e])) * SqrtRational::half_power(p, -e);
    return out;
}

SqrtRational TwistClasses::plain_family_sum(std::span<const int> exps) const {
    int f = total_exponent(exps);
    mpz_class S = 0;
    for (const auto& cls : classes) {
        mpz_class prod = 1;
        for (int e : exps) {
            if (e == 0) continue;
            prod *= curves::hat_lambda(cls.trace, p, e, cls.good);
            if (prod == 0) break;
        }
        S += to_mpz(cls.count_ac) * prod;
    }
    return SqrtRational(mpq_class(S)) * SqrtRational::half_power(p, -f);
}

}  // namespace ecm::orthogonality
