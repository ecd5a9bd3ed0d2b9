#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace pretsums {

// Smallest-prime-factor table for 2..limit, built with a linear sieve.
class SieveTable {
public:
    explicit SieveTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
    std::span<const std::uint32_t> primes() const { return primes_; }
    // primes p with p <= bound
    std::span<const std::uint32_t> primes_upto(std::uint64_t bound) const;

    struct Factor {
        std::uint32_t p;
        int e;
    };
    // prime factorization by repeated division; n must be in [1, limit]
    std::vector<Factor> factor(std::uint64_t n) const;
    std::uint32_t largest_prime_factor(std::uint64_t n) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

using SievePtr = std::shared_ptr<const SieveTable>;

inline SievePtr make_sieve(std::uint64_t limit) { return std::make_shared<const SieveTable>(limit); }

}  // namespace pretsums
