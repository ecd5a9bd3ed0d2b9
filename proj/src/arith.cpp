#include "pretsums/arith.hpp"

#include "pretsums/errors.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace pretsums::arith {

std::vector<PrimePower> factor(u64 n) {
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.e;
            pp.pe *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> ds{1};
    for (const auto& [p, e, pe] : factor(n)) {
        const std::size_t base = ds.size();
        u64 pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

u64 euler_phi(u64 n) {
    u64 phi = n;
    for (const auto& pp : factor(n)) phi = phi / pp.p * (pp.p - 1);
    return phi;
}

int mobius(u64 n) {
    int mu = 1;
    for (const auto& pp : factor(n)) {
        if (pp.e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

int omega(u64 n) { return static_cast<int>(factor(n).size()); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

u64 powmod(u64 b, u64 e, u64 m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<u64>(r);
}

i64 mod_inverse(i64 a, i64 m) {
    i64 old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1 && m != 1)
        throw DomainError("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    return mod(old_s, m);
}

u64 ipow(u64 b, int e) {
    u64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace pretsums::arith
