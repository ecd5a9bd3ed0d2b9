#include "pretsums/circle.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/expsum.hpp"
#include "pretsums/fft.hpp"
#include "pretsums/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pretsums {

using arith::i64;
using arith::u64;

namespace {

using boost::math::quadrature::gauss_kronrod;

void check_problem(const TripleProblem& prob, const SieveTable& sieve) {
    if (prob.a < 1 || prob.b < 1 || prob.c < 1) throw DomainError("coefficients a, b, c must be positive");
    if (prob.x > sieve.limit()) throw DomainError("range exceeds the sieve limit");
}

bool integer_weights(const TripleProblem& prob) {
    return prob.f.is_integer_valued() && prob.g.is_integer_valued() && prob.h.is_integer_valued();
}

TripleSum finish(cplx v, bool integer) {
    if (!integer) return {v, 0.0, false};
    const double r = std::round(v.real());
    const double res = std::max(std::fabs(v.real() - r), std::fabs(v.imag()));
    if (res >= 0.4) throw DomainError("convolution residual too large for an integer count");
    return {{r, 0.0}, res, true};
}

int valuation(u64 p, i64 n, int cap) {
    if (n == 0) return cap;
    u64 m = static_cast<u64>(n < 0 ? -n : n);
    int v = 0;
    while (v < cap && m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

// (1/p^e) sum_{val(u) = i} F[i] e(u s / p^e) for val(s) = j, via Ramanujan sums
cplx valuation_transform(const std::vector<cplx>& F, double p, int e, int j) {
    cplx acc = F[static_cast<std::size_t>(e)] * std::pow(p, -e);
    for (int i = std::max(0, e - j); i < e; ++i) acc += F[static_cast<std::size_t>(i)] * (1.0 - 1.0 / p) * std::pow(p, -i);
    if (j < e) acc -= F[static_cast<std::size_t>(e - j - 1)] * std::pow(p, j - e);
    return acc;
}

// Ramanujan sum c_{p^m}(N)
double ramanujan_pm(u64 p, int m, u64 N) {
    if (m == 0) return 1.0;
    const int v = N == 0 ? m : valuation(p, static_cast<i64>(N), m);
    const double pd = static_cast<double>(p);
    if (m <= v) return std::pow(pd, m) * (1.0 - 1.0 / pd);
    if (m == v + 1) return -std::pow(pd, m - 1);
    return 0.0;
}

void check_weights(int e, const std::vector<cplx>& F, const std::vector<cplx>& G, const std::vector<cplx>& H) {
    const auto n = static_cast<std::size_t>(e) + 1;
    if (e < 1 || F.size() != n || G.size() != n || H.size() != n)
        throw DomainError("valuation weights need e >= 1 and e + 1 entries");
}

// exponent with p^e close to 1e15, standing in for e -> infinity
int limit_exponent(u64 p) { return std::max(1, static_cast<int>(std::floor(15.0 * std::log(10.0) / std::log(static_cast<double>(p))))); }

std::vector<cplx> power_weights(cplx v, int e) {
    std::vector<cplx> w(static_cast<std::size_t>(e) + 1);
    w[0] = 1.0;
    for (int k = 1; k <= e; ++k) w[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k) - 1] * v;
    return w;
}

double estar_normalizer(u64 p, double fp, double gp, double hp) {
    const double pd = static_cast<double>(p);
    return (1.0 - fp / pd) * (1.0 - gp / pd) * (1.0 - hp / pd) / std::pow(1.0 - 1.0 / pd, 3);
}

// weight of a residue u mod p^e for the p-part of F_s twisted by the frame
std::vector<cplx> residue_weights(u64 p, int e, const PretentiousFrame& fr, const MultFunc& f) {
    const u64 pe = arith::ipow(p, e);
    const cplx fp = f.at_prime(p) * nit(static_cast<double>(p), -fr.t);
    std::vector<cplx> w(pe);
    for (u64 u = 0; u < pe; ++u) {
        if (u == 0) {
            w[0] = std::pow(fp, e);
            continue;
        }
        u64 m = u;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        w[u] = std::pow(fp, k) * fr.psi.local(p, static_cast<i64>(m));
    }
    return w;
}

bool product_principal(const DirichletCharacter& a, const DirichletCharacter& b, const DirichletCharacter& c) {
    const u64 L = std::lcm(std::lcm(a.modulus(), b.modulus()), c.modulus());
    for (u64 n = 1; n <= L; ++n) {
        if (std::gcd(n, L) != 1) continue;
        const auto k = static_cast<i64>(n);
        if (std::abs(a(k) * b(k) * c(k) - 1.0) > 1e-9) return false;
    }
    return true;
}

cplx gk_integrate(const std::function<cplx(double)>& fn, double lo, double hi, double tol) {
    if (!(hi > lo)) return {0.0, 0.0};
    const double re = gauss_kronrod<double, 31>::integrate([&](double s) { return fn(s).real(); }, lo, hi, 12, tol);
    const double im = gauss_kronrod<double, 31>::integrate([&](double s) { return fn(s).imag(); }, lo, hi, 12, tol);
    return {re, im};
}

cplx upow_it(double u, double t) { return u > 0.0 ? nit(u, t) : cplx(t == 0.0 ? 1.0 : 0.0, 0.0); }

double rule_density(const std::vector<cplx>& vals) {
    double s = 0.0;
    for (std::size_t n = 1; n < vals.size(); ++n) s += vals[n].real();
    return s / static_cast<double>(vals.size() - 1);
}

double tail_estimate(u64 P) {
    const double Pd = static_cast<double>(P);
    return 1.0 / (Pd * std::log(Pd));
}

AbcReport abc_common(const PrimeRule& A, const PrimeRule& B, const PrimeRule& C, u64 x, const SieveTable& sieve,
                     u64 product_limit, TripleMode mode) {
    if (x < 2) throw DomainError("range must be at least 2");
    if (product_limit < 2 || product_limit > sieve.limit()) throw DomainError("product limit outside the sieve");
    TripleProblem prob{MultFunc::smooth_indicator(A), MultFunc::smooth_indicator(B), MultFunc::smooth_indicator(C),
                       1, 1, 1, x, mode};
    AbcReport rep{};
    rep.oracle_density = triple_sum_fft(prob, sieve).value.real() / triple_normalizer(prob);
    rep.delta_A = rule_density(prob.f.eval_range(x, sieve));
    rep.delta_B = rule_density(prob.g.eval_range(x, sieve));
    rep.delta_C = rule_density(prob.h.eval_range(x, sieve));
    double prod = 1.0;
    for (u64 p : sieve.primes_upto(product_limit)) {
        if (A(p) || B(p) || C(p)) continue;
        const double q = static_cast<double>(p) - 1.0;
        const bool cubic = mode == TripleMode::partition && x % p != 0;
        prod *= cubic ? 1.0 + 1.0 / (q * q * q) : 1.0 - 1.0 / (q * q);
    }
    rep.euler_product = prod;
    rep.tail_bound = tail_estimate(product_limit);
    rep.product_limit = product_limit;
    rep.predicted_density = rep.delta_A * rep.delta_B * rep.delta_C * prod;
    return rep;
}

}  // namespace

// ---- triple sums ----------------------------------------------------------------------------------

double triple_normalizer(const TripleProblem& prob) {
    const double x = static_cast<double>(prob.x);
    return x * x / 2.0;
}

TripleSum triple_sum_direct(const TripleProblem& prob, const SieveTable& sieve) {
    check_problem(prob, sieve);
    const u64 x = prob.x;
    const auto F = prob.f.eval_range(x, sieve), G = prob.g.eval_range(x, sieve), H = prob.h.eval_range(x, sieve);
    KahanSum acc;
    if (prob.mode == TripleMode::partition) {
        for (u64 l = 1; l + 2 <= x; ++l)
            for (u64 m = 1; l + m + 1 <= x; ++m) acc.add(F[l] * G[m] * H[x - l - m]);
    } else {
        const i64 a = prob.a, b = prob.b, c = prob.c;
        for (u64 l = 1; l <= x; ++l)
            for (u64 m = 1; m <= x; ++m) {
                const i64 s = a * static_cast<i64>(l) + b * static_cast<i64>(m);
                if (s % c != 0) continue;
                const i64 n = s / c;
                if (n > static_cast<i64>(x)) break;
                acc.add(F[l] * G[m] * H[static_cast<u64>(n)]);
            }
    }
    return {acc.value(), 0.0, false};
}

TripleSum triple_sum_fft(const TripleProblem& prob, const SieveTable& sieve) {
    check_problem(prob, sieve);
    const u64 x = prob.x;
    const auto F = prob.f.eval_range(x, sieve), G = prob.g.eval_range(x, sieve), H = prob.h.eval_range(x, sieve);
    const bool integer = integer_weights(prob);
    if (x < 1) return {{0.0, 0.0}, 0.0, integer};
    KahanSum acc;
    if (prob.mode == TripleMode::partition) {
        const auto conv = convolve(F, G);
        for (u64 n = 1; n + 2 <= x; ++n) acc.add(conv[x - n] * H[n]);
        return finish(acc.value(), integer);
    }
    const auto a = static_cast<u64>(prob.a), b = static_cast<u64>(prob.b), c = static_cast<u64>(prob.c);
    std::vector<cplx> Fa(a * x + 1), Gb(b * x + 1);
    for (u64 n = 1; n <= x; ++n) {
        Fa[a * n] = F[n];
        Gb[b * n] = G[n];
    }
    const auto conv = convolve(Fa, Gb);
    for (u64 n = 1; n <= x && c * n < conv.size(); ++n) acc.add(conv[c * n] * H[n]);
    return finish(acc.value(), integer);
}

// ---- local factors --------------------------------------------------------------------------------------

cplx euler_factor_E(u64 p, int e, i64 a, i64 b, i64 c, const std::vector<cplx>& F, const std::vector<cplx>& G,
                    const std::vector<cplx>& H) {
    check_weights(e, F, G, H);
    const double pd = static_cast<double>(p);
    const int va = valuation(p, a, e), vb = valuation(p, b, e), vc = valuation(p, c, e);
    cplx acc = 0.0;
    for (int j = 0; j <= e; ++j) {
        const double n = j < e ? std::pow(pd, e - j) * (1.0 - 1.0 / pd) : 1.0;
        acc += n * valuation_transform(F, pd, e, std::min(e, j + va)) * valuation_transform(G, pd, e, std::min(e, j + vb)) *
               valuation_transform(H, pd, e, std::min(e, j + vc));
    }
    return acc;
}

cplx euler_factor_EN(u64 p, int e, u64 N, const std::vector<cplx>& F, const std::vector<cplx>& G,
                     const std::vector<cplx>& H) {
    check_weights(e, F, G, H);
    const double pd = static_cast<double>(p);
    cplx acc = 0.0;
    for (int j = 0; j <= e; ++j)
        acc += ramanujan_pm(p, e - j, N) * valuation_transform(F, pd, e, j) * valuation_transform(G, pd, e, j) *
               valuation_transform(H, pd, e, j);
    return acc;
}

cplx euler_factor_bruteforce(u64 pe, i64 a, i64 b, i64 c, const std::vector<cplx>& F, const std::vector<cplx>& G,
                             const std::vector<cplx>& H, u64 target) {
    if (pe == 0 || F.size() != pe || G.size() != pe || H.size() != pe)
        throw DomainError("residue weights need one entry per residue");
    const auto m = static_cast<i64>(pe);
    std::vector<cplx> Bv(pe, 0.0), Av(pe, 0.0);
    for (i64 v = 0; v < m; ++v) Bv[static_cast<u64>(arith::mod(b * v, m))] += G[static_cast<u64>(v)];
    for (i64 s = 0; s < m; ++s) {
        cplx acc = 0.0;
        for (i64 u = 0; u < m; ++u) acc += F[static_cast<u64>(u)] * Bv[static_cast<u64>(arith::mod(s - a * u, m))];
        Av[static_cast<u64>(s)] = acc;
    }
    cplx acc = 0.0;
    for (i64 w = 0; w < m; ++w)
        acc += H[static_cast<u64>(w)] * Av[static_cast<u64>(arith::mod(static_cast<i64>(target) - c * w, m))];
    return acc / (static_cast<double>(pe) * static_cast<double>(pe));
}

int local_exponent(u64 p, double z) {
    if (p < 2) throw DomainError("local exponent needs a prime");
    const double z2 = z * z;
    int e = 1;
    double pe = static_cast<double>(p);
    while (pe <= z2) {
        pe *= static_cast<double>(p);
        ++e;
    }
    return e;
}

double estar(u64 p, double fp, double gp, double hp) {
    if (fp == 1.0 || gp == 1.0 || hp == 1.0) return 1.0;
    const int e = limit_exponent(p);
    const cplx E = euler_factor_E(p, e, 1, 1, -1, power_weights(fp, e), power_weights(gp, e), power_weights(hp, e));
    return E.real() * estar_normalizer(p, fp, gp, hp);
}

double estar_all_minus(u64 p) {
    const double pd = static_cast<double>(p);
    return 1.0 - 8.0 / ((pd - 1.0) * (pd - 1.0) * (1.0 + 1.0 / (pd * pd)));
}

double estar_N(u64 p, double fp, double gp, double hp, u64 N) {
    const int e = limit_exponent(p);
    const cplx E = euler_factor_EN(p, e, N, power_weights(fp, e), power_weights(gp, e), power_weights(hp, e));
    return E.real() * estar_normalizer(p, fp, gp, hp);
}

// ---- archimedean factors --------------------------------------------------------------------------------

cplx archimedean_E(i64 a, i64 b, i64 c, double tf, double tg, double th) {
    if (c == 0) throw DomainError("archimedean factor needs c != 0");
    const double ad = static_cast<double>(a), bd = static_cast<double>(b), cd = static_cast<double>(c);
    const double L = std::min(0.0, -cd), H = std::max(0.0, -cd);
    auto inner = [&](double u) -> cplx {
        double lo = 0.0, hi = 1.0;
        if (b == 0) {
            const double s = ad * u;
            if (s < L || s > H) return {0.0, 0.0};
        } else {
            double v1 = (L - ad * u) / bd, v2 = (H - ad * u) / bd;
            if (v1 > v2) std::swap(v1, v2);
            lo = std::max(lo, v1);
            hi = std::min(hi, v2);
        }
        if (!(hi > lo)) return {0.0, 0.0};
        if (tg == 0.0 && th == 0.0) return hi - lo;
        return gk_integrate([&](double v) { return upow_it(v, tg) * upow_it(std::max(0.0, -(ad * u + bd * v) / cd), th); },
                            lo, hi, 1e-11);
    };
    return gk_integrate([&](double u) { return upow_it(u, tf) * inner(u); }, 0.0, 1.0, 1e-10) / std::fabs(cd);
}

cplx archimedean_partition(double tf, double tg, double th) {
    auto inner = [&](double u) -> cplx {
        const double hi = 1.0 - u;
        if (!(hi > 0.0)) return {0.0, 0.0};
        if (tg == 0.0 && th == 0.0) return hi;
        return gk_integrate([&](double v) { return upow_it(v, tg) * upow_it(std::max(0.0, 1.0 - u - v), th); }, 0.0,
                            hi, 1e-11);
    };
    return 2.0 * gk_integrate([&](double u) { return upow_it(u, tf) * inner(u); }, 0.0, 1.0, 1e-10);
}

// ---- predictions ------------------------------------------------------------------------------------------

TripleReport predict_triples(const TripleProblem& prob, const SieveTable& sieve, const TripleOptions& opt) {
    check_problem(prob, sieve);
    if (prob.x < 3) throw DomainError("prediction needs x >= 3");
    const u64 x = prob.x;
    const double xd = static_cast<double>(x);
    const bool partition = prob.mode == TripleMode::partition;

    TripleReport rep{};
    const cplx oracle = triple_sum_fft(prob, sieve).value;
    rep.oracle = oracle;
    rep.oracle_density = oracle.real() / triple_normalizer(prob);
    rep.z = opt.z ? *opt.z : std::max(2.0, std::log(xd));

    const PretentiousFrame trivial{DirichletCharacter(1), 1, 0.0, 0.0};
    if (opt.trivial_frames) {
        rep.frame_f = rep.frame_g = rep.frame_h = trivial;
    } else {
        rep.frame_f = global_frame(prob.f, x, opt.max_conductor, sieve);
        rep.frame_g = global_frame(prob.g, x, opt.max_conductor, sieve);
        rep.frame_h = global_frame(prob.h, x, opt.max_conductor, sieve);
    }
    const MultFunc* fs[3] = {&prob.f, &prob.g, &prob.h};
    const PretentiousFrame* frs[3] = {&rep.frame_f, &rep.frame_g, &rep.frame_h};
    cplx means[3];
    for (int i = 0; i < 3; ++i) {
        const auto split = split_small_large(*fs[i], frs[i]->psi, frs[i]->t, rep.z);
        means[i] = mean_value(split.F_l, x, sieve) / xd;
    }
    rep.mean_Fl = means[0];
    rep.mean_Gl = means[1];
    rep.mean_Hl = means[2];

    const double tsum = rep.frame_f.t + rep.frame_g.t + rep.frame_h.t;
    rep.Einf = partition ? archimedean_partition(rep.frame_f.t, rep.frame_g.t, rep.frame_h.t) / 2.0
                         : archimedean_E(prob.a, prob.b, -prob.c, rep.frame_f.t, rep.frame_g.t, rep.frame_h.t);
    rep.delta_principal = product_principal(rep.frame_f.psi, rep.frame_g.psi, rep.frame_h.psi);

    // primes at which local factors are taken: p <= z together with the conductor primes
    std::vector<u64> primes;
    for (u64 p : sieve.primes_upto(static_cast<u64>(rep.z))) primes.push_back(p);
    for (int i = 0; i < 3; ++i)
        for (const auto& pp : arith::factor(frs[i]->r)) primes.push_back(pp.p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    rep.Ep.resize(primes.size());
    parallel_for(primes.size(), [&](std::size_t idx) {
        const u64 p = primes[idx];
        const int e = local_exponent(p, rep.z);
        bool at_conductor = false;
        for (int i = 0; i < 3; ++i) at_conductor = at_conductor || frs[i]->r % p == 0;
        cplx value;
        if (!at_conductor) {
            std::vector<cplx> W[3];
            for (int i = 0; i < 3; ++i) W[i] = power_weights(twist(*fs[i], frs[i]->psi, frs[i]->t).at_prime(p), e);
            value = partition ? euler_factor_EN(p, e, x, W[0], W[1], W[2])
                              : euler_factor_E(p, e, prob.a, prob.b, -prob.c, W[0], W[1], W[2]);
        } else {
            std::vector<cplx> W[3];
            for (int i = 0; i < 3; ++i) W[i] = residue_weights(p, e, *frs[i], *fs[i]);
            const u64 pe = arith::ipow(p, e);
            value = partition ? euler_factor_bruteforce(pe, 1, 1, 1, W[0], W[1], W[2], x % pe)
                              : euler_factor_bruteforce(pe, prob.a, prob.b, -prob.c, W[0], W[1], W[2]);
        }
        rep.Ep[idx] = {p, e, value};
    });
    cplx prod = 1.0;
    for (const auto& lf : rep.Ep) prod *= lf.value;

    rep.predicted_density = rep.delta_principal
                                ? means[0] * means[1] * means[2] * 2.0 * rep.Einf * nit(xd, tsum) * prod
                                : cplx(0.0, 0.0);

    const bool unit_coeffs = partition || (prob.a == 1 && prob.b == 1 && prob.c == 1);
    if (unit_coeffs && integer_weights(prob)) {
        double mu = 1.0;
        for (int i = 0; i < 3; ++i) mu *= mean_value(*fs[i], x, sieve).real() / xd;
        for (u64 p : sieve.primes_upto(static_cast<u64>(rep.z))) {
            const double fp = prob.f.at_prime(p).real(), gp = prob.g.at_prime(p).real(), hp = prob.h.at_prime(p).real();
            mu *= partition ? estar_N(p, fp, gp, hp, x) : estar(p, fp, gp, hp);
        }
        rep.realform_density = mu;
    }
    return rep;
}

// ---- (ABC1) / (ABC2) ----------------------------------------------------------------------------------------

double AbcReport::rel_error() const {
    if (predicted_density == 0.0) return oracle_density == 0.0 ? 0.0 : INFINITY;
    return std::fabs(oracle_density - predicted_density) / std::fabs(predicted_density);
}

AbcReport abc_linear(const PrimeRule& A, const PrimeRule& B, const PrimeRule& C, u64 x, const SieveTable& sieve,
                     u64 product_limit) {
    return abc_common(A, B, C, x, sieve, product_limit, TripleMode::linear);
}

AbcReport abc_partition(const PrimeRule& A, const PrimeRule& B, const PrimeRule& C, u64 N, const SieveTable& sieve,
                        u64 product_limit) {
    return abc_common(A, B, C, N, sieve, product_limit, TripleMode::partition);
}

// ---- constants ------------------------------------------------------------------------------------------

double delta0() {
    const double s = std::sqrt(std::exp(1.0));
    const double I = gauss_kronrod<double, 61>::integrate([](double t) { return std::log(t) / (t + 1.0); }, 1.0, s, 15,
                                                          1e-15);
    return -1.0 + 2.0 * std::log(1.0 + s) - 4.0 * I;
}

Cor2Constants cor2_constants() {
    const double d = delta0();
    return {std::pow(1.0 + d, 3) / 8.0, std::pow(1.0 - d, 3) / 8.0};
}

double c2_product(u64 P, const SieveTable& sieve) {
    if (P > sieve.limit()) throw DomainError("product limit exceeds the sieve limit");
    double prod = 1.0;
    for (u64 p : sieve.primes_upto(P)) prod *= std::fabs(estar_all_minus(p));
    return prod;
}

double c_P(const std::vector<u64>& P) {
    double c = 1.0;
    for (u64 p : P) c *= estar_all_minus(p);
    return c;
}

double alpha_P(const std::vector<u64>& P) {
    double a = 1.0;
    for (u64 p : P) a *= (static_cast<double>(p) - 1.0) / (static_cast<double>(p) + 1.0);
    return a;
}

double same_function_density(const std::vector<u64>& P, double t) {
    const double a = alpha_P(P), C = c_P(P);
    const double at = a * t;
    return (1.0 + at - at * at - C * at * at * at) / 8.0;
}

namespace {

ExtremalCase search_extremal(double tmax) {
    const std::vector<u64> small = {2, 3, 5, 7, 11, 13};
    ExtremalCase best{{}, 0.0, -INFINITY};
    constexpr int steps = 20000;
    for (u64 mask = 0; mask < (1u << small.size()); ++mask) {
        std::vector<u64> P;
        for (std::size_t i = 0; i < small.size(); ++i)
            if (mask & (1u << i)) P.push_back(small[i]);
        for (int k = 0; k <= steps; ++k) {
            const double t = tmax * k / steps;
            const double v = same_function_density(P, t);
            if (v > best.value) best = {P, t, v};
        }
    }
    return best;
}

}  // namespace

ExtremalTable extremal_table(const SieveTable& sieve, u64 P) {
    ExtremalTable tab{};
    const double d = delta0();
    tab.c2_product = c2_product(P, sieve);
    tab.two_plus_one_minus = search_extremal(1.0);
    tab.two_minus_one_plus = search_extremal(d);
    tab.eight_forty_fifths = same_function_density({2}, 1.0);
    tab.p3_value = same_function_density({3}, d);
    for (int mu = 0; mu <= 3; ++mu) tab.mixed_max.push_back(std::pow((1.0 + d) / 2.0, mu));
    return tab;
}

// ---- sign patterns --------------------------------------------------------------------------------------

SignPattern signpattern_density(const MultFunc& f, const MultFunc& g, const MultFunc& h, int e1, int e2, int e3, u64 x,
                                const SieveTable& sieve, std::optional<double> z) {
    for (const MultFunc* m : {&f, &g, &h})
        if (m->value_class() != ValueClass::sign) throw DomainError("sign patterns need +-1 valued functions");
    for (int e : {e1, e2, e3})
        if (e != 1 && e != -1) throw DomainError("pattern entries must be +1 or -1");
    if (x < 3 || x > sieve.limit()) throw DomainError("range must lie in [3, sieve limit]");

    const MultFunc one = MultFunc::one();
    const MultFunc* fs[3] = {&f, &g, &h};
    const int eps[3] = {e1, e2, e3};
    double total = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        TripleProblem prob{mask & 1 ? f : one, mask & 2 ? g : one, mask & 4 ? h : one, 1, 1, 1, x,
                           TripleMode::linear};
        double sign = 1.0;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) sign *= eps[i];
        total += sign * triple_sum_fft(prob, sieve).value.real();
    }
    SignPattern out{};
    const double xd = static_cast<double>(x);
    out.oracle = total / 8.0 / (xd * xd / 2.0);
    double d[3];
    for (int i = 0; i < 3; ++i) d[i] = mean_value(*fs[i], x, sieve).real() / xd;
    out.delta_f = d[0];
    out.delta_g = d[1];
    out.delta_h = d[2];
    const double zz = z ? *z : std::max(2.0, std::log(xd));
    for (u64 p : sieve.primes_upto(static_cast<u64>(zz)))
        if (f.at_prime(p).real() < 0 && g.at_prime(p).real() < 0 && h.at_prime(p).real() < 0) out.P.push_back(p);
    out.C_P = c_P(out.P);
    const double prod = (1.0 + e1 * d[0]) * (1.0 + e2 * d[1]) * (1.0 + e3 * d[2]);
    out.predicted = (prod + e1 * e2 * e3 * d[0] * d[1] * d[2] * (out.C_P - 1.0)) / 8.0;
    return out;
}

SumsetMean fs_mean_over_sumset(const SmallLargeSplit& split, const std::vector<u64>& A, const std::vector<u64>& B,
                               const SieveTable& sieve) {
    if (A.empty() || B.empty()) throw DomainError("sumset mean needs non-empty sets");
    const u64 amax = *std::max_element(A.begin(), A.end()), bmax = *std::max_element(B.begin(), B.end());
    if (*std::min_element(A.begin(), A.end()) == 0 || *std::min_element(B.begin(), B.end()) == 0)
        throw DomainError("sumset elements must be positive");
    const u64 smax = amax + bmax;
    if (smax > sieve.limit()) throw DomainError("sumset exceeds the sieve limit");

    std::vector<cplx> ia(amax + 1, 0.0), ib(bmax + 1, 0.0);
    for (u64 a : A) ia[a] += 1.0;
    for (u64 b : B) ib[b] += 1.0;
    const auto conv = convolve(ia, ib);
    std::vector<double> count(smax + 1, 0.0);
    for (u64 s = 0; s <= smax && s < conv.size(); ++s) count[s] = std::round(conv[s].real());

    const double norm = static_cast<double>(A.size()) * static_cast<double>(B.size());
    KahanSum direct;
    for (u64 s = 2; s <= smax; ++s)
        if (count[s] != 0.0) direct.add(count[s] * split.F_s.eval(s, sieve));

    const KappaFunction kappa(split.F_s, split.psi, split.t);
    KahanSum lemma;
    for (u64 m = 1; m <= smax; ++m) {
        if (static_cast<double>(sieve.largest_prime_factor(m)) > split.z) continue;
        const cplx km = kappa.eval(m, sieve);
        if (std::abs(km) < 1e-15) continue;
        cplx acc = 0.0;
        for (u64 k = 1; m * k <= smax; ++k)
            if (count[m * k] != 0.0)
                acc += count[m * k] * split.psi(static_cast<i64>(k)) * nit(static_cast<double>(m * k), split.t);
        lemma.add(km * acc);
    }
    return {lemma.value() / norm, direct.value() / norm};
}

}  // namespace pretsums
