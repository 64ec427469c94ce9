#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecm {

using i64 = long long;
using i128 = __int128;

inline mpz_class to_mpz(i64 v) { return mpz_class(static_cast<long>(v)); }

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace arith {

i64 mod_floor(i64 a, i64 m);                 // representative in [0, m)
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 base, i64 exp, i64 m);

// Legendre symbol (a/p) for odd prime p, via Euler's criterion.
int legendre(i64 a, i64 p);

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(i64 a, i64 n);

// chi[r] = Legendre symbol (r/p) as -1/0/+1, r in [0, p).
std::vector<int8_t> quadratic_character_table(i64 p);

std::vector<i64> primes_up_to(i64 n);
bool is_prime(i64 n);

// Prime factorization of n > 0, trial division plus Brent-Pollard rho.
std::vector<std::pair<i64, int>> factorize(i64 n);

int mobius(i64 n);          // 0 when n is not squarefree
bool is_squarefree(i64 n);
i64 radical(i64 n);         // product of distinct primes dividing n

}  // namespace arith
}  // namespace ecm
