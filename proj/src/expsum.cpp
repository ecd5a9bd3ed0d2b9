#include "pretsums/expsum.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/fft.hpp"
#include "pretsums/kernels.hpp"
#include "pretsums/oscint.hpp"
#include "pretsums/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pretsums {

using arith::i64;
using arith::u64;

namespace {

constexpr std::size_t kBlock = 256;

double loglog(double x) { return std::log(std::log(x)); }

double require_x3(u64 x) {
    if (x < 3) throw DomainError("x must be at least 3");
    return static_cast<double>(x);
}

void require_sieve(u64 x, const SieveTable& sieve) {
    if (x > sieve.limit()) throw DomainError("x exceeds the sieve limit");
}

std::vector<PretentiousFrame> frames_for(const MultFunc& f, u64 x, u64 q, const SieveTable& sieve,
                                         const PredictOptions& opt) {
    if (opt.frames) return *opt.frames;
    return select_frames(f, static_cast<double>(x), q, opt.J, sieve);
}

FrameTerm frame_term(const PretentiousFrame& fr) {
    FrameTerm t{};
    t.psi = fr.psi.label();
    t.r = fr.r;
    t.t = fr.t;
    t.score = fr.score;
    t.included = true;
    return t;
}

}  // namespace

cplx direct_sum(const std::vector<cplx>& vals, double alpha) {
    if (vals.size() <= 1) return {0.0, 0.0};
    std::vector<cplx> table(kBlock);
    for (std::size_t k = 0; k < kBlock; ++k) table[k] = expi2pi_mul(static_cast<i64>(k), alpha);
    KahanSum acc;
    for (std::size_t b = 1; b < vals.size(); b += kBlock) {
        const std::size_t len = std::min(kBlock, vals.size() - b);
        acc.add(expi2pi_mul(static_cast<i64>(b), alpha) * kernels::cdot(vals.data() + b, table.data(), len));
    }
    return acc.value();
}

cplx direct_sum(const MultFunc& f, double alpha, u64 x, const SieveTable& sieve) {
    require_sieve(x, sieve);
    return direct_sum(f.eval_range(x, sieve), alpha);
}

cplx friable_sum(const MultFunc& f, double alpha, u64 x, double y, const SieveTable& sieve) {
    require_sieve(x, sieve);
    auto vals = f.eval_range(x, sieve);
    for (u64 n = 2; n <= x; ++n)
        if (static_cast<double>(sieve.largest_prime_factor(n)) > y) vals[n] = 0.0;
    return direct_sum(vals, alpha);
}

double friable_bound(double x, double y, u64 q) {
    if (!(x >= 3.0) || !(y >= 2.0)) throw DomainError("friable bound needs x >= 3 and y >= 2");
    if (q == 0 || static_cast<double>(q) > x) throw DomainError("friable bound needs 1 <= q <= x");
    const double qd = static_cast<double>(q);
    return std::sqrt(x * y) + (x / std::sqrt(qd) + std::sqrt(x * qd * std::log(2.0 * x / qd))) * std::log(y) +
           x / std::exp(0.5 * std::sqrt(std::log(x) * loglog(x)));
}

// ---- arcs ---------------------------------------------------------------------

std::pair<i64, u64> best_convergent(double alpha, double bound) {
    if (!(bound >= 1.0)) throw DomainError("convergent bound must be at least 1");
    long double r = alpha;
    i64 h2 = 0, h1 = 1;
    u64 k2 = 1, k1 = 0;
    i64 h = 0;
    u64 k = 1;
    bool first = true;
    for (int it = 0; it < 64; ++it) {
        const long double fl = std::floor(r);
        if (fl > 1e18L) break;
        const auto a = static_cast<i64>(fl);
        const long double kn = static_cast<long double>(a) * k1 + k2;
        if (!first && kn > bound) break;
        const i64 hn = a * h1 + h2;
        const u64 knu = static_cast<u64>(kn);
        h2 = h1;
        h1 = hn;
        k2 = k1;
        k1 = knu;
        h = hn;
        k = knu;
        first = false;
        const long double frac = r - fl;
        if (frac < 1e-18L) break;
        r = 1.0L / frac;
    }
    return {h, k};
}

ArcDecomposition classify_alpha(double alpha, double x, double eps, std::optional<double> major_qmax) {
    if (!(x >= 3.0)) throw DomainError("arc classification needs x >= 3");
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    ArcDecomposition arc{};
    arc.alpha = alpha - std::floor(alpha);
    arc.eps = eps;
    const double lx = std::log(x);
    arc.Q = x / std::pow(lx, kTau - eps);
    arc.Q1 = lx * lx * std::pow(loglog(x), 1.0 + eps);
    const auto [a, q] = best_convergent(arc.alpha, arc.Q);
    const double qd = static_cast<double>(q);
    arc.q = q;
    arc.beta = static_cast<double>(static_cast<long double>(arc.alpha) -
                                   static_cast<long double>(a) / static_cast<long double>(q));
    arc.a = ((a % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q);
    const double qmax = major_qmax.value_or(x / arc.Q);
    arc.major = qd <= qmax && std::fabs(arc.beta) <= 1.0 / (qd * arc.Q);
    if (q >= 3) arc.Q3 = x / (qd * std::log(qd) * loglog(qd));
    const double width = q >= 3 ? std::max(1.0, std::log(qd) * loglog(qd)) / x : 1.0 / x;
    arc.theorem1_range = qd <= arc.Q1 && std::fabs(arc.beta) <= width;
    return arc;
}

// ---- Theorem 1 ------------------------------------------------------------------

double err_J(double x, u64 q, double beta, int J) {
    if (!(x >= 3.0)) throw DomainError("error term needs x >= 3");
    const double lx = std::log(x), llx = loglog(x), qd = static_cast<double>(q);
    const double shape = std::pow(lx, -(1.0 - 1.0 / std::sqrt(static_cast<double>(J)))) +
                         1.0 / (std::sqrt(qd) * std::pow(lx, kEta));
    return (1.0 + std::fabs(beta) * x) * x * (qd / static_cast<double>(arith::euler_phi(q))) * llx * llx * shape;
}

PredictionReport predict_theorem1(const MultFunc& f, i64 a, u64 q, double beta, u64 x, const SieveTable& sieve,
                                  const PredictOptions& opt) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    if (q == 0) throw DomainError("modulus must be positive");
    if (std::gcd(static_cast<u64>(arith::mod(a, static_cast<i64>(q))), q) != 1)
        throw DomainError("predict_theorem1 needs gcd(a, q) = 1");
    const auto frames = frames_for(f, x, q, sieve, opt);
    const double phi = static_cast<double>(arith::euler_phi(q));

    PredictionReport rep{};
    rep.x = xd;
    KahanSum total;
    for (const auto& fr : frames) {
        FrameTerm term = frame_term(fr);
        if (q % fr.r != 0) {
            term.included = false;
            rep.terms.push_back(term);
            continue;
        }
        const KappaFunction kappa(f, fr.psi, fr.t);
        term.coefficient = std::conj(fr.psi(a)) * gauss_sum(fr.psi) * kappa.eval(q / fr.r, sieve) / phi;
        const cplx S = mean_value(kappa.twisted(), x, sieve);
        term.value = term.coefficient * osc_I(xd, beta, fr.t) * S;
        total.add(term.value);
        rep.terms.push_back(term);
    }
    rep.predicted = total.value();
    rep.err = err_J(xd, q, beta, opt.J);
    if (opt.with_oracle)
        rep.oracle = direct_sum(f, static_cast<double>(a) / static_cast<double>(q) + beta, x, sieve);
    return rep;
}

// ---- periodic twists --------------------------------------------------------------

cplx twisted_coefficient(const PeriodicFunction& h, const PretentiousFrame& frame, const MultFunc& f) {
    const u64 q = h.period;
    if (q % frame.r != 0) return {0.0, 0.0};
    const KappaFunction kappa(f, frame.psi, frame.t);
    KahanSum acc;
    for (u64 n : arith::divisors(q)) {
        if (n % frame.r != 0) continue;
        acc.add(k_factor(kappa.twisted(), n) * kappa(q / n) * pseudo_gauss(h, n, frame.psi));
    }
    return acc.value();
}

cplx twisted_coefficient_dagger(const PeriodicFunction& h, const PretentiousFrame& frame, const MultFunc& f) {
    const u64 q = h.period;
    if (q % frame.r != 0) return {0.0, 0.0};
    const KappaFunction kappa(f, frame.psi, frame.t);
    KahanSum acc;
    for (u64 m : arith::divisors(q)) {
        if (m % frame.r != 0) continue;
        const u64 c = q / m;
        cplx fq(1.0, 0.0);
        for (const auto& pp : arith::factor(c)) fq *= std::pow(f.at_prime(pp.p), static_cast<int>(pp.e));
        const double ratio = static_cast<double>(m) / static_cast<double>(arith::euler_phi(m));
        acc.add(ratio * fq * nit(static_cast<double>(c), -frame.t) * k_factor(kappa.twisted(), std::gcd(m, c)) *
                pseudo_gauss_dagger(h, m, frame.psi));
    }
    return acc.value() / static_cast<double>(q);
}

PredictionReport predict_twisted(const MultFunc& f, const PeriodicFunction& h, u64 x, const SieveTable& sieve,
                                 const PredictOptions& opt) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    const u64 q = h.period;
    const auto frames = frames_for(f, x, q, sieve, opt);
    const double phi = static_cast<double>(arith::euler_phi(q));
    const double lx = std::log(xd);

    PredictionReport rep{};
    rep.x = xd;
    KahanSum total;
    double gmax_sum = 0.0;
    for (const auto& fr : frames) {
        FrameTerm term = frame_term(fr);
        if (q % fr.r != 0) {
            term.included = false;
            rep.terms.push_back(term);
            continue;
        }
        const KappaFunction kappa(f, fr.psi, fr.t);
        term.coefficient = twisted_coefficient(h, fr, f) / phi;
        term.value = term.coefficient * osc_I(xd, 0.0, fr.t) * mean_value(kappa.twisted(), x, sieve);
        total.add(term.value);
        double gmax = 0.0;
        for (u64 n : arith::divisors(q))
            if (n % fr.r == 0) gmax = std::max(gmax, std::abs(pseudo_gauss(h, n, fr.psi)));
        gmax_sum += gmax;
        rep.terms.push_back(term);
    }
    rep.predicted = total.value();
    double hmass = 0.0;
    for (const auto& v : h.values) hmass += std::abs(v);
    const double qd = static_cast<double>(q);
    rep.err = hmass / qd * xd / std::pow(lx, 1.0 - opt.eps) + gmax_sum / qd * xd / std::pow(lx, kEta - opt.eps);
    if (opt.with_oracle) {
        const auto vals = f.eval_range(x, sieve);
        KahanSum s;
        for (u64 n = 1; n <= x; ++n) s.add(vals[n] * h.values[n % q]);
        rep.oracle = s.value();
    }
    return rep;
}

// ---- progressions and character sums ---------------------------------------------------

cplx ap_sum_direct(const MultFunc& f, i64 a, u64 q, u64 x, const SieveTable& sieve) {
    require_sieve(x, sieve);
    if (q == 0) throw DomainError("modulus must be positive");
    const auto vals = f.eval_range(x, sieve);
    const u64 start = static_cast<u64>(arith::mod(a, static_cast<i64>(q)));
    KahanSum s;
    for (u64 n = start == 0 ? q : start; n <= x; n += q) s.add(vals[n]);
    return s.value();
}

PredictionReport ap_sum_predict(const MultFunc& f, i64 a, u64 q, u64 x, const SieveTable& sieve,
                                const PredictOptions& opt) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    if (q == 0) throw DomainError("modulus must be positive");
    if (std::gcd(static_cast<u64>(arith::mod(a, static_cast<i64>(q))), q) != 1)
        throw DomainError("progression sums need gcd(a, q) = 1");
    const auto frames = frames_for(f, x, q, sieve, opt);
    const double phi = static_cast<double>(arith::euler_phi(q));

    PredictionReport rep{};
    rep.x = xd;
    KahanSum total;
    for (const auto& fr : frames) {
        FrameTerm term = frame_term(fr);
        if (q % fr.r != 0) {
            term.included = false;
            rep.terms.push_back(term);
            continue;
        }
        const MultFunc fj = twist(f, fr.psi, fr.t);
        term.coefficient = fr.psi(a) * k_factor(fj, q) / phi;
        term.value = term.coefficient * osc_I(xd, 0.0, fr.t) * mean_value(fj, x, sieve);
        total.add(term.value);
        rep.terms.push_back(term);
    }
    rep.predicted = total.value();
    const double llx = loglog(xd);
    rep.err = xd / phi * llx * llx / std::pow(std::log(xd), kEta);
    if (opt.with_oracle) rep.oracle = ap_sum_direct(f, a, q, x, sieve);
    return rep;
}

PredictionReport s_f_chi_predict(const MultFunc& f, const DirichletCharacter& chi, u64 ell, u64 x,
                                 const SieveTable& sieve, bool with_oracle) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    if (ell == 0) throw DomainError("ell must be positive");
    const DirichletCharacter psi = chi.primitive();
    const u64 q = chi.modulus(), r = psi.modulus();
    const double t = select_t(f * MultFunc::character(psi.conj()), xd, std::log(xd), sieve).t;

    cplx euler(1.0, 0.0);
    for (u64 p : CharacterGroup::get(q)->primes()) {
        const double pd = static_cast<double>(p);
        euler *= 1.0 - f.at_prime(p) * std::conj(psi(static_cast<i64>(p))) * nit(pd, -t) / pd;
    }
    const double elld = static_cast<double>(ell);
    const cplx ell_factor = nit(elld, -t) / elld;
    const cplx S = mean_value(twist(f, psi, t), x, sieve);

    PredictionReport rep{};
    rep.x = xd;
    FrameTerm term{};
    term.psi = psi.label();
    term.r = r;
    term.t = t;
    term.score = 0.0;
    term.included = true;
    term.coefficient = ell_factor * euler;
    term.value = term.coefficient * osc_I(xd, 0.0, t) * S;
    rep.terms.push_back(term);
    rep.predicted = term.value;
    const double llx = loglog(xd);
    const u64 qr = q / r;
    rep.err = static_cast<double>(qr) / static_cast<double>(arith::euler_phi(qr)) * xd * llx * llx /
              (elld * std::pow(std::log(xd), kEta));
    if (with_oracle) rep.oracle = mean_value(f, x / ell, sieve, &chi);
    return rep;
}

// ---- arc decomposition -----------------------------------------------------------------

PretentiousFrame global_frame(const MultFunc& f, u64 x, u64 max_conductor, const SieveTable& sieve) {
    const double xd = require_x3(x);
    if (max_conductor == 0) throw DomainError("max_conductor must be positive");
    std::vector<DirichletCharacter> candidates;
    for (u64 r = 1; r <= max_conductor; ++r)
        for (auto& psi : primitive_characters(r)) candidates.push_back(std::move(psi));
    std::vector<TSelection> sels(candidates.size());
    parallel_for(candidates.size(), [&](std::size_t i) {
        sels[i] = select_t(f * MultFunc::character(candidates[i].conj()), xd, std::log(xd), sieve);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < sels.size(); ++i)
        if (sels[i].score > sels[best].score) best = i;
    return {candidates[best], candidates[best].modulus(), sels[best].t, sels[best].score};
}

cplx major_arc_term(const ArcDecomposition& arc, const PretentiousFrame& frame, const MultFunc& f, cplx S_fstar,
                    u64 x, const SieveTable& sieve) {
    if (!arc.major || arc.q % frame.r != 0) return {0.0, 0.0};
    const KappaFunction kappa(f, frame.psi, frame.t);
    const double phi = static_cast<double>(arith::euler_phi(arc.q));
    return std::conj(frame.psi(arc.a)) * gauss_sum(frame.psi) * kappa.eval(arc.q / frame.r, sieve) / phi *
           osc_I(static_cast<double>(x), arc.beta, frame.t) * S_fstar;
}

ArcSplit arc_decompose_Rf(const MultFunc& f, double alpha, u64 x, const SieveTable& sieve, double eps,
                          u64 max_conductor, std::optional<double> major_qmax) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    ArcSplit out{classify_alpha(alpha, xd, eps, major_qmax), global_frame(f, x, max_conductor, sieve), {}, {}, {}};
    out.R = direct_sum(f, alpha, x, sieve);
    const cplx S = mean_value(twist(f, out.frame.psi, out.frame.t), x, sieve);
    out.M = major_arc_term(out.arc, out.frame, f, S, x, sieve);
    out.E = out.R - out.M;
    return out;
}

std::vector<ScanRow> expsum_scan(const MultFunc& f, u64 x, std::size_t grid, const SieveTable& sieve, double eps,
                                 u64 max_conductor) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    if (grid == 0) throw DomainError("grid must be positive");
    const auto vals = f.eval_range(x, sieve);
    const PretentiousFrame frame = global_frame(f, x, max_conductor, sieve);
    const cplx S = mean_value(twist(f, frame.psi, frame.t), x, sieve);
    std::vector<ScanRow> rows(grid);
    parallel_for(grid, [&](std::size_t k) {
        const double alpha = static_cast<double>(k) / static_cast<double>(grid);
        const auto arc = classify_alpha(alpha, xd, eps);
        const cplx R = direct_sum(vals, alpha);
        const cplx M = major_arc_term(arc, frame, f, S, x, sieve);
        rows[k] = {alpha, std::abs(R), arc.major, std::abs(M), std::abs(R - M)};
    });
    return rows;
}

// ---- minor-arc energy ----------------------------------------------------------------------

EnergyReport minor_arc_energy(const MultFunc& f, u64 x, const SieveTable& sieve, std::int64_t grid, double eps) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    const std::size_t M = grid <= 0 ? 8 * next_pow2(2 * x + 1) : static_cast<std::size_t>(grid);
    if (M < 2 * x + 1) throw DomainError("energy grid must have at least 2x + 1 points");
    const auto vals = f.eval_range(x, sieve);

    EnergyReport rep{};
    rep.x = x;
    rep.grid = M;
    rep.parseval = kernels::norm2(vals.data(), vals.size());

    const double lx = std::log(xd);
    const double Q = xd / std::pow(lx, kTau - eps);
    const auto qmax = static_cast<u64>(std::floor(xd / Q));
    struct Arc {
        i64 a;
        u64 q;
        double w;
    };
    std::vector<Arc> arcs;
    for (u64 q = 1; q <= std::max<u64>(qmax, 1); ++q)
        for (u64 a = 0; a < q; ++a)
            if (std::gcd(a, q) == 1) arcs.push_back({static_cast<i64>(a), q, 1.0 / (static_cast<double>(q) * Q)});
    rep.arcs = arcs.size();

    // grid: R(k/M) for all k, then the share of points on the minor arcs
    std::vector<cplx> padded(M, cplx(0.0, 0.0));
    std::copy(vals.begin(), vals.end(), padded.begin());
    const auto R = dft(padded, +1);
    std::vector<char> major(M, 0);
    const double Md = static_cast<double>(M);
    for (const auto& arc : arcs) {
        const double c = static_cast<double>(arc.a) / static_cast<double>(arc.q);
        const auto lo = static_cast<i64>(std::ceil((c - arc.w) * Md));
        const auto hi = static_cast<i64>(std::floor((c + arc.w) * Md));
        for (i64 k = lo; k <= hi; ++k) major[static_cast<std::size_t>(arith::mod(k, static_cast<i64>(M)))] = 1;
    }
    double total = 0.0, minor = 0.0;
    for (std::size_t k = 0; k < M; ++k) {
        const double v = std::norm(R[k]);
        total += v;
        if (!major[k]) minor += v;
    }
    rep.grid_total = total / Md;
    rep.grid_minor = minor / Md;

    // exact: int_{|beta| <= w} |R(a/q + beta)|^2 = sum_h c(h) e(ha/q) sin(2 pi h w)/(pi h)
    const std::size_t N = next_pow2(2 * vals.size());
    std::vector<cplx> buf(N, cplx(0.0, 0.0));
    std::copy(vals.begin(), vals.end(), buf.begin());
    auto F = dft(buf, -1);
    for (auto& v : F) v = std::norm(v);
    auto corr = dft(F, +1);  // corr[h] = N c(h), c(-h) = conj c(h)
    const double inv = 1.0 / static_cast<double>(N);
    KahanSum major_sum;
    for (const auto& arc : arcs) {
        major_sum.add(2.0 * arc.w * corr[0].real() * inv);
        for (u64 h = 1; h <= x; ++h) {
            const cplx c = corr[h] * inv;
            const double kern = std::sin(kTwoPi * static_cast<double>(h) * arc.w) / (std::numbers::pi * static_cast<double>(h));
            major_sum.add(2.0 * (c * root_of_unity(static_cast<i64>(h) * arc.a, static_cast<i64>(arc.q))).real() * kern);
        }
    }
    rep.major_exact = major_sum.value().real();
    rep.minor_exact = rep.parseval - rep.major_exact;
    return rep;
}

// ---- bounds and identities -----------------------------------------------------------------------

BoundReport bound_report(const MultFunc& f, double alpha, u64 x, const SieveTable& sieve, double eps) {
    const double xd = require_x3(x);
    BoundReport rep{};
    rep.R_abs = std::abs(direct_sum(f, alpha, x, sieve));
    rep.arc = classify_alpha(alpha, xd, eps);
    const double qd = static_cast<double>(rep.arc.q);
    const double R = std::max(3.0, std::min(qd, xd / qd));
    const double base = xd / std::log(xd);
    rep.bound_11 = base + xd * std::sqrt(std::log(R) * loglog(R) / R);
    rep.bound_12 = base + xd / std::sqrt(qd);
    rep.bound_12b = base + xd / std::sqrt(qd * (1.0 + std::fabs(rep.arc.beta) * xd));
    rep.ratio_11 = rep.R_abs / rep.bound_11;
    rep.ratio_12 = rep.R_abs / rep.bound_12;
    rep.ratio_12b = rep.R_abs / rep.bound_12b;
    return rep;
}

IdentityCheck summation_identity_check(const MultFunc& f, i64 a, u64 q, double beta, u64 x,
                                       const SieveTable& sieve) {
    require_sieve(x, sieve);
    if (q == 0 || x == 0) throw DomainError("identity check needs q, x >= 1");
    const auto vals = f.eval_range(x, sieve);
    IdentityCheck out{};
    out.lhs = direct_sum(vals, static_cast<double>(a) / static_cast<double>(q) + beta);
    // R(v, a/q) is constant on [n, n+1), so the integral is a sum of exact pieces
    KahanSum P, integral;
    for (u64 n = 1; n <= x; ++n) {
        P.add(vals[n] * root_of_unity(static_cast<i64>(n % q) * a, static_cast<i64>(q)));
        if (n < x) {
            const double nd = static_cast<double>(n);
            integral.add(P.value() * (expi2pi(beta * (nd + 1.0)) - expi2pi(beta * nd)));
        }
    }
    out.rhs = expi2pi(beta * static_cast<double>(x)) * P.value() - integral.value();
    out.rel_error = std::abs(out.lhs - out.rhs) / std::max(1.0, std::abs(out.lhs));
    return out;
}

double pls_tail(const MultFunc& f, u64 x, u64 q, int J, const SieveTable& sieve) {
    const double xd = require_x3(x);
    require_sieve(x, sieve);
    if (J < 2) throw DomainError("J must be at least 2");
    const auto ranking = rank_characters(f, std::sqrt(xd), q, sieve);
    const auto top = ranking.top(J);
    const auto vals = f.eval_range(x, sieve);
    const auto chars = enumerate_characters(q);
    std::vector<double> sq(chars.size(), 0.0);
    parallel_for(chars.size(), [&](std::size_t i) {
        if (std::find(top.begin(), top.end(), chars[i]) != top.end()) return;
        std::vector<cplx> cbar(q);
        for (u64 m = 0; m < q; ++m) cbar[m] = std::conj(chars[i](static_cast<i64>(m)));
        KahanSum s;
        for (u64 n = 1; n <= x; ++n) s.add(vals[n] * cbar[n % q]);
        sq[i] = std::norm(s.value());
    });
    double tail = 0.0;
    for (double v : sq) tail += v;
    return tail / (xd * xd);
}

MultFunc adaptive_extremal(const MultFunc& base, double alpha, u64 x, const SieveTable& sieve) {
    require_x3(x);
    require_sieve(x, sieve);
    const auto vals = base.eval_range(x, sieve);
    // n <= x with a prime factor above x/2 is that prime itself
    std::vector<cplx> small = vals;
    std::map<u64, cplx> large;
    for (u64 p : sieve.primes_upto(x))
        if (2 * p > x) {
            small[p] = 0.0;
            large[p] = 0.0;
        }
    const cplx S = direct_sum(small, alpha);
    const double theta = std::abs(S) == 0.0 ? 0.0 : std::arg(S) / kTwoPi;
    for (auto& [p, v] : large) v = expi2pi(theta) * std::conj(expi2pi_mul(static_cast<i64>(p), alpha));
    auto fn = [base, large](u64 p) -> cplx {
        const auto it = large.find(p);
        return it == large.end() ? base.at_prime(p) : it->second;
    };
    return MultFunc("adaptive(" + base.label() + ")", fn, ValueClass::general);
}

}  // namespace pretsums
