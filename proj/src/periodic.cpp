#include "pretsums/periodic.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"

#include <cmath>
#include <numeric>

namespace pretsums {

using arith::i64;
using arith::u64;

namespace {

// u_p with 1/q = sum_p u_p / p^e (mod 1)
i64 crt_weight(u64 q, u64 pe) {
    return arith::mod_inverse(static_cast<i64>((q / pe) % pe), static_cast<i64>(pe));
}

// g(n) mod m for ascending coefficients, Horner with reductions
i64 poly_mod(const std::vector<i64>& c, i64 n, i64 m) {
    __int128 acc = 0;
    for (std::size_t k = c.size(); k-- > 0;) acc = (acc * arith::mod(n, m) + arith::mod(c[k], m)) % m;
    return static_cast<i64>(acc);
}

int poly_degree(const std::vector<i64>& c) {
    for (std::size_t k = c.size(); k-- > 0;)
        if (c[k] != 0) return static_cast<int>(k);
    return 0;
}

}  // namespace

cplx PeriodicFunction::operator()(i64 n) const { return values[arith::mod(n, static_cast<i64>(period))]; }

u64 PeriodicFunction::minimal_period() const {
    for (u64 d : arith::divisors(period)) {
        bool ok = true;
        for (u64 n = d; n < period && ok; ++n)
            if (std::abs(values[n] - values[n % d]) > 1e-12) ok = false;
        if (ok) return d;
    }
    return period;
}

double PeriodicFunction::crt_residual() const {
    if (factors.empty()) return 0.0;
    double worst = 0.0;
    for (u64 n = 0; n < period; ++n) {
        cplx prod(1.0, 0.0);
        for (const auto& f : factors) prod *= f.values[n % f.pe];
        worst = std::max(worst, std::abs(prod - values[n]));
    }
    return worst;
}

PeriodicFunction periodic_constant(u64 q, cplx value) {
    if (q == 0) throw DomainError("period must be positive");
    PeriodicFunction h;
    h.period = q;
    h.values.assign(q, value);
    return h;
}

PeriodicFunction periodic_expmod(u64 q, const std::vector<i64>& coeffs) {
    if (q == 0) throw DomainError("period must be positive");
    PeriodicFunction h;
    h.period = q;
    h.values.resize(q);
    const i64 qi = static_cast<i64>(q);
    for (i64 n = 0; n < qi; ++n) h.values[n] = root_of_unity(poly_mod(coeffs, n, qi), qi);
    for (const auto& pp : arith::factor(q)) {
        const i64 pe = static_cast<i64>(pp.pe);
        const i64 u = crt_weight(q, pp.pe);
        LocalFactor lf{pp.p, pp.pe, std::vector<cplx>(pp.pe)};
        for (i64 n = 0; n < pe; ++n)
            lf.values[n] = root_of_unity(static_cast<i64>(static_cast<__int128>(poly_mod(coeffs, n, pe)) * u % pe), pe);
        h.factors.push_back(std::move(lf));
    }
    h.weil_weight = poly_degree(coeffs);
    return h;
}

PeriodicFunction periodic_kloosterman(u64 q, i64 a, i64 b) {
    if (q == 0) throw DomainError("period must be positive");
    PeriodicFunction h;
    h.period = q;
    h.values.assign(q, cplx(0.0, 0.0));
    const i64 qi = static_cast<i64>(q);
    for (i64 n = 0; n < qi; ++n) {
        if (std::gcd(n, qi) != 1) continue;
        const i64 nbar = arith::mod_inverse(n, qi);
        const __int128 g = static_cast<__int128>(arith::mod(a, qi)) * n + static_cast<__int128>(arith::mod(b, qi)) * nbar;
        h.values[n] = root_of_unity(static_cast<i64>(g % qi), qi);
    }
    if (q == 1) h.values[0] = {1.0, 0.0};
    for (const auto& pp : arith::factor(q)) {
        const i64 pe = static_cast<i64>(pp.pe);
        const i64 u = crt_weight(q, pp.pe);
        LocalFactor lf{pp.p, pp.pe, std::vector<cplx>(pp.pe, cplx(0.0, 0.0))};
        for (i64 n = 0; n < pe; ++n) {
            if (n % static_cast<i64>(pp.p) == 0) continue;
            const i64 nbar = arith::mod_inverse(n, pe);
            const __int128 g = (static_cast<__int128>(arith::mod(a, pe)) * n + static_cast<__int128>(arith::mod(b, pe)) * nbar) % pe;
            lf.values[n] = root_of_unity(static_cast<i64>(g * u % pe), pe);
        }
        h.factors.push_back(std::move(lf));
    }
    h.weil_weight = 2;
    return h;
}

PeriodicFunction periodic_charshift(const DirichletCharacter& chi, i64 c) {
    const u64 q = chi.modulus();
    PeriodicFunction h;
    h.period = q;
    h.values.resize(q);
    for (u64 n = 0; n < q; ++n) h.values[n] = chi(static_cast<i64>(n) + c);
    for (const auto& pp : arith::factor(q)) {
        LocalFactor lf{pp.p, pp.pe, std::vector<cplx>(pp.pe)};
        for (u64 n = 0; n < pp.pe; ++n) lf.values[n] = chi.local(pp.p, static_cast<i64>(n) + c);
        h.factors.push_back(std::move(lf));
    }
    h.weil_weight = 1;
    return h;
}

PeriodicFunction periodic_table(std::vector<cplx> values) {
    if (values.empty()) throw DomainError("periodic table must be non-empty");
    PeriodicFunction h;
    h.period = values.size();
    h.values = std::move(values);
    return h;
}

PeriodicFunction periodic_product(const PeriodicFunction& a, const PeriodicFunction& b) {
    PeriodicFunction h;
    h.period = std::lcm(a.period, b.period);
    h.values.resize(h.period);
    for (u64 n = 0; n < h.period; ++n) h.values[n] = a.values[n % a.period] * b.values[n % b.period];
    if (a.period == b.period && !a.factors.empty() && a.factors.size() == b.factors.size()) {
        h.factors = a.factors;
        for (std::size_t i = 0; i < h.factors.size(); ++i)
            for (u64 n = 0; n < h.factors[i].pe; ++n) h.factors[i].values[n] *= b.factors[i].values[n];
    }
    if (a.weil_weight && b.weil_weight) h.weil_weight = *a.weil_weight + *b.weil_weight;
    return h;
}

cplx pseudo_gauss(const PeriodicFunction& h, u64 D, const DirichletCharacter& psi) {
    const u64 q = h.period, r = psi.modulus();
    if (D == 0 || D % r != 0 || q % D != 0)
        throw DomainError("pseudo-Gauss sum needs r | D | q (r=" + std::to_string(r) + ", D=" + std::to_string(D) +
                          ", q=" + std::to_string(q) + ")");
    KahanSum s;
    const u64 step = q / D;
    for (u64 a = 1; a <= D; ++a) s.add(psi(static_cast<i64>(a)) * h.values[(a * step) % q]);
    return s.value();
}

cplx pseudo_gauss_dagger(const PeriodicFunction& h, u64 m, const DirichletCharacter& psi) {
    const u64 q = h.period;
    if (m == 0 || q % m != 0)
        throw DomainError("G^dagger needs m | q (m=" + std::to_string(m) + ", q=" + std::to_string(q) + ")");
    KahanSum s;
    const u64 step = q / m;
    for (u64 b = 1; b <= m; ++b)
        if (std::gcd(b, m) == 1) s.add(psi(static_cast<i64>(b)) * h.values[(b * step) % q]);
    return s.value();
}

WeilReport weil_bound_check(const PeriodicFunction& h) {
    if (!h.weil_weight) throw DomainError("Weil-type bound needs a function with known weight m + d");
    if (h.minimal_period() != h.period)
        throw DomainError("Weil-type bound needs minimal period " + std::to_string(h.period) + ", found " +
                          std::to_string(h.minimal_period()));
    WeilReport rep{};
    KahanSum s;
    for (const auto& v : h.values) s.add(v);
    rep.sum_abs = std::abs(s.value());
    const double w = *h.weil_weight;
    rep.bound = std::pow(w, arith::omega(h.period)) * std::sqrt(static_cast<double>(h.period));
    rep.pass = rep.sum_abs <= rep.bound * (1.0 + 1e-12) + 1e-9;
    for (const auto& f : h.factors) {
        KahanSum ls;
        for (const auto& v : f.values) ls.add(v);
        const double lb = w * std::sqrt(static_cast<double>(f.pe));
        rep.local_sum_abs.push_back(std::abs(ls.value()));
        rep.local_bound.push_back(lb);
        if (std::abs(ls.value()) > lb * (1.0 + 1e-12) + 1e-9) rep.pass = false;
    }
    return rep;
}

}  // namespace pretsums
