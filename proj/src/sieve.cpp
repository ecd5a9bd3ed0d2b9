#include "pretsums/sieve.hpp"

#include "pretsums/errors.hpp"

#include <algorithm>
#include <string>

namespace pretsums {

SieveTable::SieveTable(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
    if (limit > 0xFFFFFFFFull) throw DomainError("sieve limit too large");
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<std::uint32_t>(n);
            primes_.push_back(static_cast<std::uint32_t>(n));
        }
        for (const std::uint32_t p : primes_) {
            const std::uint64_t m = n * p;
            if (p > spf_[n] || m > limit) break;
            spf_[m] = p;
        }
    }
}

std::span<const std::uint32_t> SieveTable::primes_upto(std::uint64_t bound) const {
    const auto it = std::upper_bound(primes_.begin(), primes_.end(), bound);
    return {primes_.data(), static_cast<std::size_t>(it - primes_.begin())};
}

std::vector<SieveTable::Factor> SieveTable::factor(std::uint64_t n) const {
    if (n == 0 || n > limit_) throw DomainError("cannot factor " + std::to_string(n) + " with sieve limit " + std::to_string(limit_));
    std::vector<Factor> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

std::uint32_t SieveTable::largest_prime_factor(std::uint64_t n) const {
    std::uint32_t best = 1;
    while (n > 1) {
        best = spf_[n];
        n /= spf_[n];
    }
    return best;
}

}  // namespace pretsums
