#include "pretsums/errors.hpp"
#include "pretsums/pretentious.hpp"

#include <doctest.h>

using namespace pretsums;

TEST_CASE("t selection finds an archimedean twist") {
    SieveTable s(100000);
    const auto sel = select_t(parse_multfunc("nit:3.2"), 100000.0, std::log(100000.0), s);
    CHECK(sel.t == doctest::Approx(3.2).epsilon(1e-6));
    CHECK(sel.score >= sel.grid_score);
    const auto one = select_t(MultFunc::one(), 100000.0, std::log(100000.0), s);
    CHECK(std::fabs(one.t) < 1e-9);
}

TEST_CASE("grid evaluation agrees with the exact product") {
    SieveTable s(20000);
    const auto f = parse_multfunc("rand:5");
    const auto g = log_modulus_grid(f, 20000.0, -1.0, 0.25, 9, s);
    for (std::size_t k = 0; k < g.size(); ++k)
        CHECK(g[k] == doctest::Approx(log_dirichlet_modulus(f, 20000.0, -1.0 + 0.25 * double(k), s)).epsilon(1e-6));
}

TEST_CASE("frames pick the character f resembles") {
    SieveTable s(50000);
    const auto frames = select_frames(parse_multfunc("legendre:5"), 50000.0, 10, 3, s);
    REQUIRE(frames.size() == 2);
    CHECK(frames[0].psi == legendre_character(5));
    CHECK(std::fabs(frames[0].t) < 1e-9);
    CHECK(frames[0].score > frames[1].score);
    CHECK_THROWS_AS(select_frames(MultFunc::one(), 100.0, 0, 3, s), DomainError);
}

TEST_CASE("character ranking and distance") {
    SieveTable s(40000);
    const auto rank = rank_characters(parse_multfunc("legendre:3"), 150.0, 3, s);
    CHECK(rank.top(2).front() == legendre_character(3));
    CHECK(rank.s_values.front() >= rank.s_values.back());
    const auto chi = legendre_character(7);
    CHECK(pretentious_distance(MultFunc::character(chi), chi, 0.0, 7.0, 10000.0, s) == doctest::Approx(0.0));
    CHECK(pretentious_distance(MultFunc::minus_all(), DirichletCharacter(1), 0.0, 1.0, 10000.0, s) > 1.5);
}

TEST_CASE("Brudern check separates pretentious and non-pretentious f") {
    SieveTable s(1000000);
    const auto good = brudern_check(parse_multfunc("legendre:5"), 1000, 0.25, s);
    CHECK(good.bounded);
    CHECK(good.psi == legendre_character(5));
    const auto bad = brudern_check(MultFunc::minus_all(), 1000, 0.25, s);
    CHECK(!bad.bounded);
    CHECK(bad.increment > 0.5);
}
