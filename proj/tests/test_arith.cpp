#include "pretsums/arith.hpp"
#include "pretsums/fft.hpp"
#include "pretsums/sieve.hpp"

#include <doctest.h>

#include <random>

using namespace pretsums;

TEST_CASE("sieve smallest prime factors") {
    SieveTable s(10000);
    CHECK(s.spf(2) == 2);
    CHECK(s.spf(91) == 7);
    CHECK(s.spf(9973) == 9973);
    CHECK(s.primes_upto(100).size() == 25);
    CHECK(s.primes().size() == 1229);
    CHECK(s.largest_prime_factor(1) == 1);
    CHECK(s.largest_prime_factor(2 * 3 * 3 * 97) == 97);
    for (std::uint64_t n = 2; n <= 10000; ++n) {
        std::uint64_t m = 1;
        for (auto [p, e] : s.factor(n)) m *= arith::ipow(p, e);
        REQUIRE(m == n);
        REQUIRE(arith::is_prime(n) == s.is_prime(n));
    }
}

TEST_CASE("arithmetic functions") {
    CHECK(arith::euler_phi(1) == 1);
    CHECK(arith::euler_phi(36) == 12);
    CHECK(arith::mobius(30) == -1);
    CHECK(arith::mobius(12) == 0);
    CHECK(arith::divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(arith::mod(-7, 5) == 3);
    CHECK(arith::mod_inverse(3, 7) == 5);
    CHECK_THROWS(arith::mod_inverse(2, 4));
    CHECK(arith::powmod(2, 10, 1000) == 24);
}

TEST_CASE("dft matches the naive transform") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> in(12);
    for (auto& z : in) z = {u(rng), u(rng)};
    for (int sign : {-1, 1}) {
        const auto out = dft(in, sign);
        for (std::size_t k = 0; k < in.size(); ++k) {
            cplx want = 0.0;
            for (std::size_t n = 0; n < in.size(); ++n)
                want += in[n] * root_of_unity(sign * static_cast<std::int64_t>(n * k), static_cast<std::int64_t>(in.size()));
            CHECK(std::abs(out[k] - want) < 1e-12);
        }
    }
}

TEST_CASE("convolution matches the naive product") {
    std::vector<cplx> a{1, 2, 3}, b{cplx(0, 1), 1};
    const auto c = convolve(a, b);
    REQUIRE(c.size() == 4);
    CHECK(std::abs(c[0] - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(c[1] - cplx(1, 2)) < 1e-12);
    CHECK(std::abs(c[2] - cplx(2, 3)) < 1e-12);
    CHECK(std::abs(c[3] - cplx(3, 0)) < 1e-12);
    CHECK(next_pow2(1000) == 1024);
    CHECK(next_pow2(1024) == 1024);
}
