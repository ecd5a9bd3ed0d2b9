#pragma once
// Choice of the twist (psi, t) that f most resembles, character ranking, and
// pretentious distances.

#include "pretsums/characters.hpp"
#include "pretsums/multfunc.hpp"
#include "pretsums/sieve.hpp"

#include <cstdint>
#include <vector>

namespace pretsums {

// |F(sigma + it)| = prod_{p <= x} |1 - f(p) p^{-sigma-it}|^{-1},  sigma = 1 + 1/log x
double dirichlet_modulus(const MultFunc& f, double x, double t, const SieveTable& sieve);
double log_dirichlet_modulus(const MultFunc& f, double x, double t, const SieveTable& sieve);

struct TSelection {
    double t;
    double score;       // |F(sigma + it)| at the returned t
    double grid_t;      // best grid point before refinement
    double grid_score;
    std::size_t grid_points;
};

// Maximizer of |F(1 + 1/log x + it)| over |t| <= T: uniform grid of step
// 1/(4 log x) through t = 0, then golden-section refinement.  Ties go to the
// smaller t.
TSelection select_t(const MultFunc& f, double x, double T, const SieveTable& sieve);
// log|F| on the grid t_k = t0 + k step, k < steps (exposed for tests)
std::vector<double> log_modulus_grid(const MultFunc& f, double x, double t0, double step, std::size_t steps,
                                     const SieveTable& sieve);

struct PretentiousFrame {
    DirichletCharacter psi;  // primitive, modulus r
    std::uint64_t r;
    double t;
    double score;  // |F_{f conj(psi)}(1 + 1/log x + it)|
};

// One frame per primitive psi with conductor dividing q, best first (score
// descending, then conductor, then enumeration order); at most J - 1 kept
// unless keep_all.
std::vector<PretentiousFrame> select_frames(const MultFunc& f, double x, std::uint64_t q, int J,
                                            const SieveTable& sieve, bool keep_all = false);

struct CharacterRanking {
    std::uint64_t q;
    double X;
    std::vector<DirichletCharacter> characters;  // s-values non-increasing
    std::vector<double> s_values;
    std::vector<std::uint64_t> sample_points;
    std::vector<DirichletCharacter> top(int J) const;
};
// s_f(X, chi) = max over a geometric grid in [sqrt X, X^2] of |S_f(y, chi)| / y
CharacterRanking rank_characters(const MultFunc& f, double X, std::uint64_t q, const SieveTable& sieve,
                                 int samples = 32);

// sum_{y < p <= x} (1 - Re(f(p) conj(psi(p)) p^{-it})) / p
double pretentious_distance(const MultFunc& f, const DirichletCharacter& psi, double t, double y, double x,
                            const SieveTable& sieve);

struct BrudernReport {
    DirichletCharacter psi;
    double t;
    double distance_x;   // over p <= x
    double distance_x2;  // over p <= x^2
    double increment;
    bool bounded;        // increment <= threshold
};
// (psi, t) chosen at scale x among primitive characters of conductor <= max_conductor
BrudernReport brudern_check(const MultFunc& f, std::uint64_t x, double threshold, const SieveTable& sieve,
                            std::uint64_t max_conductor = 12);

}  // namespace pretsums
