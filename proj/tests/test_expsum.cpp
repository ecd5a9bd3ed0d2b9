#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/expsum.hpp"
#include "pretsums/oscint.hpp"

#include <doctest.h>

#include <numeric>

using namespace pretsums;

namespace {

const SieveTable& sieve() {
    static const SieveTable s(200000);
    return s;
}

cplx naive_sum(const MultFunc& f, double alpha, std::uint64_t x) {
    cplx acc = 0.0;
    for (std::uint64_t n = 1; n <= x; ++n) acc += f.eval(n, sieve()) * expi2pi(double(n) * alpha);
    return acc;
}

}  // namespace

TEST_CASE("direct sums") {
    const auto f = parse_multfunc("rand:3");
    for (double a : {0.0, 0.25, 0.1234567, 1.0 / 3.0})
        CHECK(std::abs(direct_sum(f, a, 3000, sieve()) - naive_sum(f, a, 3000)) < 1e-9);
    CHECK(direct_sum(MultFunc::one(), 0.0, 1000, sieve()).real() == doctest::Approx(1000));
    CHECK(std::abs(direct_sum(MultFunc::one(), 0.5, 1000, sieve())) < 1e-9);
    // friable sum with y >= x is the full sum
    CHECK(std::abs(friable_sum(f, 0.3, 2000, 2000.0, sieve()) - direct_sum(f, 0.3, 2000, sieve())) < 1e-9);
    CHECK(friable_bound(1e5, 100.0, 3) > 0.0);
}

TEST_CASE("continued fraction convergents and arcs") {
    CHECK(best_convergent(1.0 / 3.0, 100.0) == std::pair<std::int64_t, std::uint64_t>{1, 3});
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const auto [a, q] = best_convergent(golden, 1000.0);
    const std::uint64_t fib[] = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987};
    CHECK(std::find(std::begin(fib), std::end(fib), q) != std::end(fib));
    CHECK(q > 600);
    (void)a;

    const auto arc = classify_alpha(1.0 / 3.0 + 1e-7, 1e6);
    CHECK(arc.q == 3);
    CHECK(arc.a == 1);
    CHECK(arc.beta == doctest::Approx(1e-7).epsilon(1e-6));
    CHECK(arc.Q3.has_value());

    const auto third = classify_alpha(1.0 / 3.0, 1e6, 0.1, 20.0);
    CHECK(third.major);
    CHECK(classify_alpha(0.0, 1e6).major);
    CHECK(!classify_alpha(golden, 1e6).major);
}

TEST_CASE("Theorem 1 degenerates to the sum for f = 1 and q = 1") {
    const auto rep = predict_theorem1(MultFunc::one(), 0, 1, 0.0, 100000, sieve());
    CHECK(rep.predicted.real() == doctest::Approx(100000.0));
    CHECK(rep.abs_discrepancy() < 1e-6);
    CHECK_THROWS_AS(predict_theorem1(MultFunc::one(), 2, 4, 0.0, 1000, sieve()), DomainError);
}

TEST_CASE("Theorem 1 for a character on its own modulus") {
    const auto f = MultFunc::character(legendre_character(5));
    const auto rep = predict_theorem1(f, 1, 5, 0.0, 100000, sieve());
    REQUIRE(rep.oracle.has_value());
    CHECK(rep.abs_discrepancy() <= rep.err);
    CHECK(rep.rel_discrepancy() < 1e-3);
}

TEST_CASE("twisted sums") {
    const auto f = parse_multfunc("legendre:5");
    const auto one = predict_twisted(MultFunc::one(), periodic_constant(1), 50000, sieve());
    CHECK(std::abs(one.predicted - 50000.0) < 1e-6);
    CHECK(one.abs_discrepancy() < 1e-6);
    const auto leg = predict_twisted(f, periodic_constant(1), 50000, sieve());
    CHECK(leg.abs_discrepancy() <= leg.err);

    // h(n) = e(n/q) reduces to Theorem 1 at a = 1, beta = 0
    for (std::uint64_t q : {5u, 10u, 7u}) {
        CAPTURE(q);
        const auto tw = predict_twisted(f, periodic_expmod(q, {0, 1}), 50000, sieve());
        const auto th = predict_theorem1(f, 1, q, 0.0, 50000, sieve());
        CHECK(std::abs(tw.predicted - th.predicted) < 1e-6 * 50000);
        CHECK(std::abs(*tw.oracle - *th.oracle) < 1e-6);
    }
}

TEST_CASE("Kloosterman twist stays within the error budget") {
    const auto f = parse_multfunc("legendre:7");
    const auto rep = predict_twisted(f, periodic_kloosterman(7, 1, 1), 100000, sieve());
    CHECK(rep.abs_discrepancy() <= rep.err);
}

TEST_CASE("sums in arithmetic progressions") {
    const auto one = ap_sum_predict(MultFunc::one(), 1, 6, 100000, sieve());
    CHECK(std::abs(*one.oracle - ap_sum_direct(MultFunc::one(), 1, 6, 100000, sieve())) < 1e-9);
    CHECK(one.predicted.real() == doctest::Approx(100000.0 / 6.0).epsilon(1e-4));
    CHECK(one.rel_discrepancy() < 1e-4);
    const auto f = parse_multfunc("rand:9");
    const auto q1 = ap_sum_predict(f, 0, 1, 20000, sieve());
    CHECK(std::abs(*q1.oracle - mean_value(f, 20000, sieve())) < 1e-9);
    const auto leg = ap_sum_predict(parse_multfunc("legendre:3"), 1, 4, 100000, sieve());
    CHECK(leg.abs_discrepancy() <= leg.err);
}

TEST_CASE("character sums through the primitive character") {
    const auto rep = s_f_chi_predict(MultFunc::one(), DirichletCharacter(6), 1, 60000, sieve());
    CHECK(rep.oracle->real() == doctest::Approx(20000.0));
    CHECK(rep.predicted.real() == doctest::Approx(20000.0).epsilon(1e-9));
    const auto f = parse_multfunc("nit:1.5");
    const auto triv = s_f_chi_predict(f, DirichletCharacter(1), 1, 60000, sieve());
    CHECK(triv.rel_discrepancy() < 1e-3);
}

TEST_CASE("summation by parts identity") {
    const auto f = parse_multfunc("legendre:5*nit:0.3");
    const auto chk = summation_identity_check(f, 2, 5, 3e-5, 50000, sieve());
    CHECK(chk.rel_error < 1e-10);
}

TEST_CASE("arc decomposition") {
    const auto f = MultFunc::one();
    const auto minor = arc_decompose_Rf(f, (std::sqrt(5.0) - 1.0) / 2.0, 20000, sieve());
    CHECK(!minor.arc.major);
    CHECK(std::abs(minor.M) == 0.0);
    CHECK(std::abs(minor.E - minor.R) == 0.0);
    const auto zero = arc_decompose_Rf(f, 0.0, 20000, sieve());
    CHECK(zero.arc.major);
    CHECK(zero.M.real() == doctest::Approx(20000.0));
    CHECK(std::abs(zero.E) < 1e-6);
    const auto chi = MultFunc::character(legendre_character(7));
    const auto maj = arc_decompose_Rf(chi, 3.0 / 7.0, 50000, sieve(), 0.1, 12, 20.0);
    CHECK(maj.arc.major);
    CHECK(std::abs(maj.E) < 0.01 * std::abs(maj.R));
}

TEST_CASE("minor arc energy and Parseval") {
    const auto rep = minor_arc_energy(parse_multfunc("rand:1"), 16384, sieve());
    CHECK(rep.grid >= 2 * 16384 + 1);
    CHECK(rep.grid_total == doctest::Approx(rep.parseval).epsilon(1e-9));
    CHECK(rep.parseval == doctest::Approx(16384.0));
    CHECK(rep.minor_exact <= rep.parseval);
    const auto one = minor_arc_energy(MultFunc::one(), 16384, sieve());
    CHECK(one.minor_ratio() < 0.2);
    CHECK_THROWS_AS(minor_arc_energy(MultFunc::one(), 1000, sieve(), 100), DomainError);
}

TEST_CASE("bound report and scan") {
    const auto b = bound_report(parse_multfunc("rand:4"), 0.123, 50000, sieve());
    CHECK(b.R_abs > 0.0);
    CHECK(b.bound_11 > 0.0);
    const auto rows = expsum_scan(MultFunc::one(), 1000, 8, sieve());
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].major);
    CHECK(rows[0].R_abs == doctest::Approx(1000.0));
    for (std::size_t k = 1; k < 8; ++k) CHECK(rows[k].R_abs < 1e-6);
}

TEST_CASE("error budget shape") {
    CHECK(err_J(1e6, 1, 0.0, 3) > 0.0);
    CHECK(err_J(1e6, 3, 1e-5, 3) > err_J(1e6, 3, 0.0, 3));
    CHECK(pls_tail(parse_multfunc("legendre:5"), 10000, 5, 3, sieve()) >= 0.0);
}

TEST_CASE("adaptive extremal function") {
    const auto base = MultFunc::one();
    const auto f = adaptive_extremal(base, 0.3, 20000, sieve());
    CHECK(f.at_prime(2) == cplx(1.0, 0.0));
    CHECK(std::abs(std::abs(f.at_prime(19997)) - 1.0) < 1e-12);
}
