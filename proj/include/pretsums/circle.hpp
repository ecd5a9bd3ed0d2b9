#pragma once
// Weighted counts of solutions to a l + b m = c n and l + m + n = N, their
// local-global predictions, and the extremal sign-pattern constants.

#include "pretsums/multfunc.hpp"
#include "pretsums/numeric.hpp"
#include "pretsums/pretentious.hpp"
#include "pretsums/sieve.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace pretsums {

enum class TripleMode { linear, partition };

struct TripleProblem {
    MultFunc f, g, h;
    std::int64_t a = 1, b = 1, c = 1;
    std::uint64_t x = 2;  // range for linear mode, N for partition mode
    TripleMode mode = TripleMode::linear;
};

struct TripleSum {
    cplx value;
    double residual;  // distance to the nearest integer before rounding; 0 for direct sums
    bool integer;     // weights were integer valued and the value was rounded
};

// sum over l, m, n <= x with a l + b m = c n (linear), or l, m, n >= 1 with l + m + n = N
TripleSum triple_sum_direct(const TripleProblem& prob, const SieveTable& sieve);
TripleSum triple_sum_fft(const TripleProblem& prob, const SieveTable& sieve);
// x^2/2 in both modes
double triple_normalizer(const TripleProblem& prob);

// Local factor (1/p^{2e}) sum_{a u + b v + c w = 0 mod p^e} F(u) G(v) H(w) for weights that
// depend only on the p-adic valuation: F[k] is the weight of v_p(u) = k (k = e for u = 0).
cplx euler_factor_E(std::uint64_t p, int e, std::int64_t a, std::int64_t b, std::int64_t c,
                    const std::vector<cplx>& F, const std::vector<cplx>& G, const std::vector<cplx>& H);
// same with the congruence u + v + w = N mod p^e
cplx euler_factor_EN(std::uint64_t p, int e, std::uint64_t N, const std::vector<cplx>& F,
                     const std::vector<cplx>& G, const std::vector<cplx>& H);
// residue-by-residue evaluation of (1/pe^2) sum_{a u + b v + c w = target mod pe} F(u) G(v) H(w)
// for arbitrary weights indexed by residue
cplx euler_factor_bruteforce(std::uint64_t pe, std::int64_t a, std::int64_t b, std::int64_t c,
                             const std::vector<cplx>& F, const std::vector<cplx>& G, const std::vector<cplx>& H,
                             std::uint64_t target = 0);
// smallest e with p^e > z^2
int local_exponent(std::uint64_t p, double z);

// E*(p) for l + m = n with completely multiplicative prime values fp, gp, hp: the
// e -> infinity limit of E(p) divided by (1 - 1/p)^3 prod (1 - f(p)/p)^{-1}
double estar(std::uint64_t p, double fp, double gp, double hp);
// 1 - 8/((p-1)^2 (1 + 1/p^2)), the value at f(p) = g(p) = h(p) = -1
double estar_all_minus(std::uint64_t p);
// the partition analogue for l + m + n = N
double estar_N(std::uint64_t p, double fp, double gp, double hp, std::uint64_t N);

// (1/|c|) int_{0 <= u, v, w <= 1, a u + b v + c w = 0} u^{i tf} v^{i tg} w^{i th} du dv
cplx archimedean_E(std::int64_t a, std::int64_t b, std::int64_t c, double tf, double tg, double th);
// 2 int_{u, v >= 0, u + v <= 1} u^{i tf} v^{i tg} (1 - u - v)^{i th} du dv (equals 1 at t = 0)
cplx archimedean_partition(double tf, double tg, double th);

struct LocalFactor3 {
    std::uint64_t p;
    int e;
    cplx value;
};

struct TripleReport {
    double oracle_density;       // real part of the normalized count
    cplx oracle;                 // raw count
    cplx predicted_density;      // mean(F_l) mean(G_l) mean(H_l) * 2 E(inf) x^{it} delta prod E(p)
    std::optional<double> realform_density;  // mu(f) mu(g) mu(h) prod E*(p), real-valued coefficients only
    cplx Einf;
    std::vector<LocalFactor3> Ep;
    bool delta_principal;
    double z;
    cplx mean_Fl, mean_Gl, mean_Hl;
    PretentiousFrame frame_f{DirichletCharacter(1), 1, 0.0, 0.0};
    PretentiousFrame frame_g{DirichletCharacter(1), 1, 0.0, 0.0};
    PretentiousFrame frame_h{DirichletCharacter(1), 1, 0.0, 0.0};
};

struct TripleOptions {
    std::optional<double> z;        // default log x
    std::uint64_t max_conductor = 12;
    bool trivial_frames = false;    // use psi = 1 and t = 0 for all three functions
};

TripleReport predict_triples(const TripleProblem& prob, const SieveTable& sieve, const TripleOptions& opt = {});

// ---- the (ABC1) / (ABC2) densities --------------------------------------------------------------

struct AbcReport {
    double oracle_density;
    double predicted_density;
    double delta_A, delta_B, delta_C;
    double euler_product;
    double tail_bound;  // sum_{p > P} 1/(p-1)^2
    std::uint64_t product_limit;
    double rel_error() const;
};
// A, B, C the integers built from the primes selected by the rules
AbcReport abc_linear(const PrimeRule& A, const PrimeRule& B, const PrimeRule& C, std::uint64_t x,
                     const SieveTable& sieve, std::uint64_t product_limit = 1000000);
AbcReport abc_partition(const PrimeRule& A, const PrimeRule& B, const PrimeRule& C, std::uint64_t N,
                        const SieveTable& sieve, std::uint64_t product_limit = 1000000);

// ---- constants ----------------------------------------------------------------------------------------

// -1 + 2 log(1 + sqrt e) - 4 int_1^{sqrt e} log t / (t + 1) dt
double delta0();
struct Cor2Constants {
    double kappa, kappa_prime;
};
Cor2Constants cor2_constants();
// prod_{p <= P} |1 - 8 p^2 / ((p-1)^2 (p^2+1))|
double c2_product(std::uint64_t P, const SieveTable& sieve);

// C_P and alpha_P for a prime set
double c_P(const std::vector<std::uint64_t>& P);
double alpha_P(const std::vector<std::uint64_t>& P);
// (1/8)(1 + alpha t - alpha^2 t^2 - C alpha^3 t^3)
double same_function_density(const std::vector<std::uint64_t>& P, double t);

struct ExtremalCase {
    std::vector<std::uint64_t> P;
    double t;
    double value;
};
struct ExtremalTable {
    double c2_product;
    ExtremalCase two_plus_one_minus;  // search over P within small primes, t in [0, 1]
    ExtremalCase two_minus_one_plus;  // t in [0, delta0]
    double eight_forty_fifths;        // the formula at P = {2}, t = 1
    double p3_value;                  // the formula at P = {3}, t = delta0
    std::vector<double> mixed_max;    // ((1 + delta0)/2)^mu for mu = 0..3
};
ExtremalTable extremal_table(const SieveTable& sieve, std::uint64_t P = 1000000);

struct SignPattern {
    double oracle;
    double predicted;
    double delta_f, delta_g, delta_h;
    double C_P;
    std::vector<std::uint64_t> P;
};
// density of l + m = n <= x with f(l) = e1, g(m) = e2, h(n) = e3 for +-1 valued f, g, h
SignPattern signpattern_density(const MultFunc& f, const MultFunc& g, const MultFunc& h, int e1, int e2, int e3,
                                std::uint64_t x, const SieveTable& sieve, std::optional<double> z = std::nullopt);

struct SumsetMean {
    cplx via_kappa;
    cplx direct;
};
// mean of F_s(a + b) over a in A, b in B, both directly and through the kappa expansion
SumsetMean fs_mean_over_sumset(const SmallLargeSplit& split, const std::vector<std::uint64_t>& A,
                               const std::vector<std::uint64_t>& B, const SieveTable& sieve);

}  // namespace pretsums
