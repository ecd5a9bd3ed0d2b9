#pragma once
// Exponential sums R_f(alpha, x) = sum_{n <= x} f(n) e(n alpha): exact
// evaluation, arc classification, and the main-term predictors.

#include "pretsums/characters.hpp"
#include "pretsums/multfunc.hpp"
#include "pretsums/periodic.hpp"
#include "pretsums/pretentious.hpp"
#include "pretsums/sieve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pretsums {

inline constexpr double kTau = 0.19526214587563503;  // (2 - sqrt 2) / 3
inline constexpr double kEta = 0.36338022763241865;  // 1 - 2/pi

// sum_{1 <= n < vals.size()} vals[n] e(n alpha), compensated
cplx direct_sum(const std::vector<cplx>& vals, double alpha);
cplx direct_sum(const MultFunc& f, double alpha, std::uint64_t x, const SieveTable& sieve);
// restricted to n whose largest prime factor is <= y
cplx friable_sum(const MultFunc& f, double alpha, std::uint64_t x, double y, const SieveTable& sieve);
// sqrt(xy) + (x/sqrt q + sqrt(x q log(2x/q))) log y + x / exp(sqrt(log x log log x) / 2)
double friable_bound(double x, double y, std::uint64_t q);

struct ArcDecomposition {
    double alpha;
    std::int64_t a;
    std::uint64_t q;
    double beta;  // alpha - a/q, in (-1/2, 1/2]
    bool major;
    double Q, Q1;
    std::optional<double> Q3;  // defined for q >= 3
    double eps;
    // q <= Q1 and |beta| <= log q log log q / x (the Theorem 1 range)
    bool theorem1_range;
};

// Last continued-fraction convergent a/q of alpha with q <= bound.
std::pair<std::int64_t, std::uint64_t> best_convergent(double alpha, double bound);
// major iff q <= x/Q (or major_qmax, when given) and |beta| <= 1/(qQ)
ArcDecomposition classify_alpha(double alpha, double x, double eps = 0.1,
                                std::optional<double> major_qmax = std::nullopt);

struct FrameTerm {
    std::string psi;  // label q:k1,...
    std::uint64_t r;
    double t;
    double score;
    bool included;      // false when r does not divide the modulus
    cplx coefficient;   // multiplies I(x, beta, t) S_{f_j}(x)
    cplx value;
};

struct PredictionReport {
    std::optional<cplx> oracle;
    cplx predicted;
    std::vector<FrameTerm> terms;
    double err;  // error budget; 0 when none is defined
    double x;
    double abs_discrepancy() const { return oracle ? std::abs(*oracle - predicted) : 0.0; }
    double rel_discrepancy() const { return abs_discrepancy() / x; }
};

// (1 + |beta| x) x (q/phi(q)) (log log x)^2 ((log x)^{-(1-1/sqrt J)} + 1/(sqrt q (log x)^eta))
double err_J(double x, std::uint64_t q, double beta, int J);

struct PredictOptions {
    int J = 3;
    double eps = 0.1;
    bool with_oracle = true;
    // use these frames instead of selecting them for the modulus
    std::optional<std::vector<PretentiousFrame>> frames;
};

// sum_j (1/phi(q)) conj(psi_j)(a) g(psi_j) kappa_j(q/r_j) I(x, beta, t_j) S_{f_j}(x)
PredictionReport predict_theorem1(const MultFunc& f, std::int64_t a, std::uint64_t q, double beta, std::uint64_t x,
                                  const SieveTable& sieve, const PredictOptions& opt = {});

// sum_{r | n | q} k(n) kappa(q/n) G_h(n; psi)
cplx twisted_coefficient(const PeriodicFunction& h, const PretentiousFrame& frame, const MultFunc& f);
// (1/q) sum_{r | m | q} (m/phi(m)) f(q/m) (q/m)^{-it} k((m, q/m)) G_h^dagger(m; psi)
cplx twisted_coefficient_dagger(const PeriodicFunction& h, const PretentiousFrame& frame, const MultFunc& f);

// sum_j (1/phi(q)) [twisted_coefficient] I(x, 0, t_j) S_{f_j}(x); oracle sum f(n) h(n)
PredictionReport predict_twisted(const MultFunc& f, const PeriodicFunction& h, std::uint64_t x,
                                 const SieveTable& sieve, const PredictOptions& opt = {});

// sum_{n <= x, n = a mod q} f(n)
cplx ap_sum_direct(const MultFunc& f, std::int64_t a, std::uint64_t q, std::uint64_t x, const SieveTable& sieve);
// (1/phi(q)) sum_j psi_j(a) k_j(q) I(x, 0, t_j) S_{f_j}(x)
PredictionReport ap_sum_predict(const MultFunc& f, std::int64_t a, std::uint64_t q, std::uint64_t x,
                                const SieveTable& sieve, const PredictOptions& opt = {});

// S_f(x/l, chi) against (I(x,0,t)/l^{1+it}) prod_{p|q}(1 - f(p) conj(psi(p))/p^{1+it}) S_{f conj(psi) n^{-it}}(x)
PredictionReport s_f_chi_predict(const MultFunc& f, const DirichletCharacter& chi, std::uint64_t ell, std::uint64_t x,
                                 const SieveTable& sieve, bool with_oracle = true);

struct ArcSplit {
    ArcDecomposition arc;
    PretentiousFrame frame;
    cplx R, M, E;
};
// best single frame among primitive characters of conductor <= max_conductor
PretentiousFrame global_frame(const MultFunc& f, std::uint64_t x, std::uint64_t max_conductor, const SieveTable& sieve);
// M_f(alpha) for a classified alpha, given the frame and S_{f_*}(x)
cplx major_arc_term(const ArcDecomposition& arc, const PretentiousFrame& frame, const MultFunc& f, cplx S_fstar,
                    std::uint64_t x, const SieveTable& sieve);
// R = M + E with M from the single best frame (over conductors <= max_conductor) on major arcs
ArcSplit arc_decompose_Rf(const MultFunc& f, double alpha, std::uint64_t x, const SieveTable& sieve,
                          double eps = 0.1, std::uint64_t max_conductor = 12,
                          std::optional<double> major_qmax = std::nullopt);

struct EnergyReport {
    std::uint64_t x;
    std::size_t grid;        // M
    double parseval;         // sum |f(n)|^2
    double grid_total;       // (1/M) sum_k |R(k/M)|^2
    double grid_minor;       // same, restricted to grid points on minor arcs
    double major_exact;      // integral of |R|^2 over the major arcs
    double minor_exact;      // parseval - major_exact
    std::size_t arcs;
    double minor_ratio() const { return minor_exact / static_cast<double>(x); }
};
// grid <= 0 picks 8 times the next power of two above 2x + 1
EnergyReport minor_arc_energy(const MultFunc& f, std::uint64_t x, const SieveTable& sieve, std::int64_t grid = 0,
                              double eps = 0.1);

struct BoundReport {
    double R_abs;
    ArcDecomposition arc;
    double bound_11, bound_12, bound_12b;
    double ratio_11, ratio_12, ratio_12b;
};
BoundReport bound_report(const MultFunc& f, double alpha, std::uint64_t x, const SieveTable& sieve, double eps = 0.1);

// e(beta x) R(x, a/q) - 2 pi i beta int_1^x e(beta v) R(v, a/q) dv, with R(v, a/q) a step function
struct IdentityCheck {
    cplx lhs, rhs;
    double rel_error;
};
IdentityCheck summation_identity_check(const MultFunc& f, std::int64_t a, std::uint64_t q, double beta,
                                       std::uint64_t x, const SieveTable& sieve);

// sum over characters outside the top J-1 (ranked with window sqrt x) of |S_f(x, chi)|^2 / x^2
double pls_tail(const MultFunc& f, std::uint64_t x, std::uint64_t q, int J, const SieveTable& sieve);

// f(p) for x/2 < p <= x replaced by e(theta - p alpha), with e(theta) aligned to the
// sum over n <= x free of primes > x/2 (theta = 0 when that sum vanishes)
MultFunc adaptive_extremal(const MultFunc& base, double alpha, std::uint64_t x, const SieveTable& sieve);

struct ScanRow {
    double alpha;
    double R_abs;
    bool major;
    double M_abs, E_abs;
};
std::vector<ScanRow> expsum_scan(const MultFunc& f, std::uint64_t x, std::size_t grid, const SieveTable& sieve,
                                 double eps = 0.1, std::uint64_t max_conductor = 12);

}  // namespace pretsums
