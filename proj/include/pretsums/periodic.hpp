#pragma once
// Functions of period q, optionally carrying a factorization h = prod h_p over
// the prime powers p^e || q (each h_p of period p^e).

#include "pretsums/characters.hpp"
#include "pretsums/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pretsums {

struct LocalFactor {
    std::uint64_t p;
    std::uint64_t pe;
    std::vector<cplx> values;  // h_p(n) for n mod pe
};

struct PeriodicFunction {
    std::uint64_t period = 1;
    std::vector<cplx> values{cplx(1.0, 0.0)};
    std::vector<LocalFactor> factors;  // empty when no product structure is known
    // m + d in the Weil-type bound: number of character factors plus the
    // degree of the phase; nullopt when the bound does not apply
    std::optional<int> weil_weight;

    cplx operator()(std::int64_t n) const;
    std::uint64_t minimal_period() const;
    // max |h(n) - prod_p h_p(n)|; 0 when there is no product structure
    double crt_residual() const;
};

PeriodicFunction periodic_constant(std::uint64_t q, cplx value = {1.0, 0.0});
// e(g(n)/q) with g(n) = c0 + c1 n + c2 n^2 + ... (coefficients ascending)
PeriodicFunction periodic_expmod(std::uint64_t q, const std::vector<std::int64_t>& coeffs);
// e((a n + b nbar)/q) for gcd(n, q) = 1, else 0
PeriodicFunction periodic_kloosterman(std::uint64_t q, std::int64_t a, std::int64_t b);
// chi(n + c)
PeriodicFunction periodic_charshift(const DirichletCharacter& chi, std::int64_t c);
PeriodicFunction periodic_table(std::vector<cplx> values);
// pointwise product; the period becomes the lcm
PeriodicFunction periodic_product(const PeriodicFunction& a, const PeriodicFunction& b);

// G_h(D; psi) = sum_{a=1}^{D} psi(a) h(aq/D); requires r | D | q
cplx pseudo_gauss(const PeriodicFunction& h, std::uint64_t D, const DirichletCharacter& psi);
// G_h^dagger(m; psi) = sum_{b mod m, (b,m)=1} psi(b) h(bq/m); requires m | q
cplx pseudo_gauss_dagger(const PeriodicFunction& h, std::uint64_t m, const DirichletCharacter& psi);

struct WeilReport {
    double sum_abs;   // |sum_{n mod q} h(n)|
    double bound;     // (m+d)^{omega(q)} sqrt(q)
    bool pass;
    std::vector<double> local_sum_abs;  // per prime power, when factored
    std::vector<double> local_bound;
};
// requires minimal period q and a known weight m + d
WeilReport weil_bound_check(const PeriodicFunction& h);

}  // namespace pretsums
