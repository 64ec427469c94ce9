#include "ecm/arith.hpp"

#include <algorithm>
#include <numeric>

namespace ecm::arith {

i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

i64 powmod(i64 base, i64 exp, i64 m) {
    i64 r = 1 % m;
    base = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

int legendre(i64 a, i64 p) {
    a = mod_floor(a, p);
    if (a == 0) return 0;
    i64 e = powmod(a, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

int jacobi(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw Error("jacobi: modulus must be odd and positive");
    a = mod_floor(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

std::vector<int8_t> quadratic_character_table(i64 p) {
    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (i64 x = 1; x <= (p - 1) / 2; ++x) chi[mulmod(x, x, p)] = 1;
    return chi;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<uint8_t> sieve(n + 1, 1);
    for (i64 i = 2; i * i <= n; ++i)
        if (sieve[i])
            for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
    for (i64 i = 2; i <= n; ++i)
        if (sieve[i]) ps.push_back(i);
    return ps;
}

namespace {

bool miller_rabin(i64 n, i64 a) {
    if (n % a == 0) return n == a;
    i64 d = n - 1;
    int s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 0; i < s - 1; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

i64 pollard_rho(i64 n) {
    if (n % 2 == 0) return 2;
    for (i64 c = 1;; ++c) {
        auto f = [&](i64 x) { return (mulmod(x, x, n) + c) % n; };
        i64 x = 2, y = 2, d = 1;
        i64 iter = 0;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(std::abs(x - y), n);
            if (++iter > (i64(1) << 22)) break;
        }
        if (d != n && d != 1) return d;
    }
}

}  // namespace

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == a) return true;
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n <= 0) throw Error("factorize: argument must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 p : {2LL, 3LL, 5LL}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    for (i64 p = 7; p * p <= n && p < 100000; p += 2) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.emplace_back(p, e);
    }
    // remaining cofactor is either 1, prime, or a product of primes > 1e5
    std::vector<i64> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        i64 m = stack.back();
        stack.pop_back();
        if (is_prime(m)) {
            bool merged = false;
            for (auto& [p, e] : out)
                if (p == m) { ++e; merged = true; break; }
            if (!merged) out.emplace_back(m, 1);
            continue;
        }
        i64 d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(i64 n) {
    auto f = factorize(n);
    int sign = 1;
    for (auto& [p, e] : f) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

bool is_squarefree(i64 n) {
    for (auto& [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return false;
    }
    return true;
}

i64 radical(i64 n) {
    i64 r = 1;
    for (auto& [p, e] : factorize(n)) {
        (void)e;
        r *= p;
    }
    return r;
}

}  // namespace ecm::arith
