#pragma once
// Elementary arithmetic on machine integers (trial division; moduli here are small).

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace pretsums::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 p;
    int e;
    u64 pe;  // p^e
};

std::vector<PrimePower> factor(u64 n);
std::vector<u64> divisors(u64 n);  // ascending
u64 euler_phi(u64 n);
int mobius(u64 n);
int omega(u64 n);  // number of distinct prime factors
bool is_prime(u64 n);
u64 powmod(u64 b, u64 e, u64 m);
i64 mod_inverse(i64 a, i64 m);  // throws DomainError when gcd(a, m) != 1
u64 ipow(u64 b, int e);

inline i64 mod(i64 a, i64 m) {
    const i64 r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace pretsums::arith
