#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/multfunc.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace pretsums;

TEST_CASE("evaluation is completely multiplicative and bounded") {
    SieveTable s(5000);
    for (const char* spec : {"one", "minus-all", "legendre:5", "char:12:1,1", "nit:2.5", "smoothset:res:4:1",
                             "sign:le:10", "rand:7", "rand0:3", "legendre:3*nit:-1"}) {
        CAPTURE(spec);
        const auto f = parse_multfunc(spec);
        const auto v = f.eval_range(5000, s);
        CHECK(std::abs(v[1] - 1.0) < 1e-15);
        for (std::uint64_t m = 1; m <= 70; ++m)
            for (std::uint64_t n = 1; n <= 70; ++n) REQUIRE(std::abs(v[m * n] - v[m] * v[n]) < 1e-12);
        for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(std::abs(v[n]) <= 1.0 + 1e-12);
        CHECK(std::abs(f.eval(4620, s) - v[4620]) < 1e-12);
    }
}

TEST_CASE("value classes") {
    SieveTable s(3000);
    const auto ind = parse_multfunc("smoothset:res:4:1");
    for (auto z : ind.eval_range(3000, s)) CHECK((z == cplx(0) || z == cplx(1)));
    const auto sgn = parse_multfunc("sign:list:2,3");
    for (std::uint64_t n = 1; n <= 3000; ++n) CHECK(std::fabs(std::fabs(sgn.eval(n, s).real()) - 1.0) < 1e-15);
    CHECK(sgn.eval(12, s).real() == doctest::Approx(-1.0));
    CHECK(parse_multfunc("minus-all").value_class() == ValueClass::sign);
    CHECK(!parse_multfunc("nit:1").is_integer_valued());
    const auto ints = sgn.eval_range_int(100, s);
    CHECK(ints[6] == 1);
    CHECK_THROWS_AS(parse_multfunc("nit:1").eval_range_int(10, s), DomainError);
}

TEST_CASE("spec parser errors name the token") {
    CHECK_THROWS_AS(parse_multfunc(""), ParseError);
    CHECK_THROWS_WITH_AS(parse_multfunc("one*bogus:3"), doctest::Contains("bogus:3"), ParseError);
    CHECK_THROWS_AS(parse_multfunc("legendre:9"), ParseError);
    CHECK_THROWS_AS(parse_multfunc("char:5"), ParseError);
    CHECK_THROWS_AS(parse_multfunc("table:/nonexistent/file"), ParseError);
}

TEST_CASE("table files") {
    const std::string path = "multfunc_table_test.txt";
    {
        std::ofstream out(path);
        out << "2 -1 0\n3 0 1\n";
    }
    const auto f = parse_multfunc("table:" + path);
    SieveTable s(100);
    CHECK(std::abs(f.eval(6, s) - cplx(0, -1)) < 1e-15);
    CHECK(std::abs(f.eval(5, s) - 1.0) < 1e-15);
    std::remove(path.c_str());
}

TEST_CASE("small/large split multiplies back to f") {
    const auto f = parse_multfunc("legendre:5*nit:0.7");
    const auto psi = legendre_character(5);
    const auto sp = split_small_large(f, psi, 0.7, 20.0);
    SieveTable s(200);
    for (std::uint64_t p : s.primes_upto(200)) {
        CHECK(std::abs(sp.F_s.at_prime(p) * sp.F_l.at_prime(p) - f.at_prime(p)) < 1e-12);
        if (p <= 20) CHECK(std::abs(sp.F_l.at_prime(p) - 1.0) < 1e-15);
    }
}

TEST_CASE("kappa convolved with psi recovers f(n) n^{-it}") {
    SieveTable s(1000);
    const double t = 0.37;
    const auto f = parse_multfunc("rand:11*nit:0.37");
    for (std::uint64_t r : {1u, 3u, 4u}) {
        for (const auto& psi : primitive_characters(r)) {
            const KappaFunction kappa(f, psi, t);
            for (std::uint64_t n = 1; n <= 1000; ++n) {
                cplx conv = 0.0;
                for (std::uint64_t d : arith::divisors(n)) conv += kappa.eval(d, s) * psi(static_cast<std::int64_t>(n / d));
                REQUIRE(std::abs(conv - f.eval(n, s) * nit(double(n), -t)) < 1e-9);
            }
        }
    }
}

TEST_CASE("mean values") {
    SieveTable s(1000);
    CHECK(mean_value(MultFunc::one(), 1000, s).real() == doctest::Approx(1000));
    const auto chi = DirichletCharacter(6);
    CHECK(mean_value(MultFunc::one(), 1000, s, &chi).real() == doctest::Approx(333));
    const auto pre = prefix_sums(MultFunc::minus_all().eval_range(10, s));
    CHECK(pre[10].real() == doctest::Approx(0.0));  // 1 -1 -1 +1 -1 +1 -1 -1 +1 +1
    CHECK(k_factor(MultFunc::one(), 6).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("prime rules") {
    const auto r = PrimeRule::parse("res:4:1,2");
    CHECK(r(5));
    CHECK(r(2));
    CHECK(!r(7));
    CHECK(PrimeRule::parse("le:10")(7));
    CHECK(!PrimeRule::parse("gt:10")(7));
    CHECK(PrimeRule::parse(r.text()).text() == r.text());
    CHECK_THROWS_AS(PrimeRule::parse("mod:3"), ParseError);
}
