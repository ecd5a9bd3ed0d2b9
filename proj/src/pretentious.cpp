#include "pretsums/pretentious.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/kernels.hpp"
#include "pretsums/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pretsums {

using arith::i64;
using arith::u64;

namespace {

// below this the third-order expansion of log|1 - z| is not used
constexpr u64 kExactPrimeBound = 256;

double sigma_of(double x) { return 1.0 + 1.0 / std::log(x); }

void require_x(double x, const SieveTable& sieve) {
    if (!(x >= 3.0)) throw DomainError("Dirichlet series modulus needs x >= 3");
    if (x > static_cast<double>(sieve.limit())) throw DomainError("x exceeds the sieve limit");
}

// -log|1 - z|
double neg_log_abs_one_minus(cplx z) { return -0.5 * std::log(std::norm(1.0 - z)); }

}  // namespace

double log_dirichlet_modulus(const MultFunc& f, double x, double t, const SieveTable& sieve) {
    require_x(x, sieve);
    const double sigma = sigma_of(x);
    double acc = 0.0;
    for (u64 p : sieve.primes_upto(static_cast<u64>(x))) {
        const cplx fp = f.at_prime(p);
        if (fp == cplx(0.0, 0.0)) continue;
        const double lp = std::log(static_cast<double>(p));
        const cplx z = fp * std::exp(-sigma * lp) * cplx(std::cos(t * lp), -std::sin(t * lp));
        acc += neg_log_abs_one_minus(z);
    }
    return acc;
}

double dirichlet_modulus(const MultFunc& f, double x, double t, const SieveTable& sieve) {
    return std::exp(log_dirichlet_modulus(f, x, t, sieve));
}

std::vector<double> log_modulus_grid(const MultFunc& f, double x, double t0, double step, std::size_t steps,
                                     const SieveTable& sieve) {
    require_x(x, sieve);
    const double sigma = sigma_of(x);
    std::vector<double> out(steps, 0.0);
    std::vector<cplx> a, w, r;
    for (u64 p : sieve.primes_upto(static_cast<u64>(x))) {
        const cplx fp = f.at_prime(p);
        if (fp == cplx(0.0, 0.0)) continue;
        const double lp = std::log(static_cast<double>(p));
        const cplx ap = fp * std::exp(-sigma * lp);
        if (p < kExactPrimeBound) {
            for (std::size_t s = 0; s < steps; ++s) {
                const double t = t0 + static_cast<double>(s) * step;
                out[s] += neg_log_abs_one_minus(ap * cplx(std::cos(t * lp), -std::sin(t * lp)));
            }
            continue;
        }
        a.push_back(ap);
        w.push_back({std::cos(t0 * lp), -std::sin(t0 * lp)});
        r.push_back({std::cos(step * lp), -std::sin(step * lp)});
    }
    kernels::euler_log_sweep(a.data(), w.data(), r.data(), a.size(), steps, out.data());
    return out;
}

TSelection select_t(const MultFunc& f, double x, double T, const SieveTable& sieve) {
    require_x(x, sieve);
    if (!(T >= 0.0)) throw DomainError("t-range must be non-negative");
    const double delta = 1.0 / (4.0 * std::log(x));
    const auto K = static_cast<std::size_t>(std::floor(T / delta));
    const std::size_t steps = 2 * K + 1;
    const double t0 = -static_cast<double>(K) * delta;
    const auto grid = log_modulus_grid(f, x, t0, delta, steps, sieve);

    const double best = *std::max_element(grid.begin(), grid.end());
    std::size_t k = 0;
    while (grid[k] < best - 1e-10 * std::max(1.0, std::fabs(best))) ++k;
    const double tg = t0 + static_cast<double>(k) * delta;
    const double grid_exact = log_dirichlet_modulus(f, x, tg, sieve);

    // golden-section search for the maximum on [tg - delta, tg + delta] within [-T, T]
    double lo = std::max(-T, tg - delta), hi = std::min(T, tg + delta);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo), d = lo + invphi * (hi - lo);
    double fc = log_dirichlet_modulus(f, x, c, sieve), fd = log_dirichlet_modulus(f, x, d, sieve);
    while (hi - lo > 1e-9) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = log_dirichlet_modulus(f, x, c, sieve);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = log_dirichlet_modulus(f, x, d, sieve);
        }
    }
    const double tr = 0.5 * (lo + hi);
    const double refined = log_dirichlet_modulus(f, x, tr, sieve);

    TSelection sel{};
    sel.grid_t = tg;
    sel.grid_score = std::exp(grid_exact);
    sel.grid_points = steps;
    if (grid_exact >= refined) {
        sel.t = tg;
        sel.score = sel.grid_score;
    } else {
        sel.t = tr;
        sel.score = std::exp(refined);
    }
    return sel;
}

std::vector<PretentiousFrame> select_frames(const MultFunc& f, double x, u64 q, int J, const SieveTable& sieve,
                                            bool keep_all) {
    if (q == 0) throw DomainError("modulus must be positive");
    if (J < 2) throw DomainError("J must be at least 2");
    std::vector<DirichletCharacter> candidates;
    for (u64 r : arith::divisors(q))
        for (auto& psi : primitive_characters(r)) candidates.push_back(std::move(psi));

    const double T = std::log(x);
    std::vector<PretentiousFrame> frames(candidates.size(), PretentiousFrame{DirichletCharacter(1), 1, 0.0, 0.0});
    parallel_for(candidates.size(), [&](std::size_t i) {
        const auto& psi = candidates[i];
        const auto sel = select_t(f * MultFunc::character(psi.conj()), x, T, sieve);
        frames[i] = PretentiousFrame{psi, psi.modulus(), sel.t, sel.score};
    });
    std::stable_sort(frames.begin(), frames.end(),
                     [](const PretentiousFrame& a, const PretentiousFrame& b) { return a.score > b.score; });
    if (!keep_all && frames.size() > static_cast<std::size_t>(J - 1)) frames.resize(static_cast<std::size_t>(J - 1));
    return frames;
}

std::vector<DirichletCharacter> CharacterRanking::top(int J) const {
    const std::size_t n = std::min<std::size_t>(characters.size(), static_cast<std::size_t>(std::max(J - 1, 0)));
    return {characters.begin(), characters.begin() + static_cast<std::ptrdiff_t>(n)};
}

CharacterRanking rank_characters(const MultFunc& f, double X, u64 q, const SieveTable& sieve, int samples) {
    if (q == 0) throw DomainError("modulus must be positive");
    if (q > sieve.limit()) throw DomainError("modulus exceeds the sieve limit");
    if (!(X >= 1.0)) throw DomainError("window X must be at least 1");
    if (samples < 2) throw DomainError("need at least two sample points");
    const u64 Y = static_cast<u64>(std::floor(X * X));
    if (Y > sieve.limit()) throw DomainError("X^2 exceeds the sieve limit");

    CharacterRanking out;
    out.q = q;
    out.X = X;
    const double lo = std::log(std::sqrt(X)), hi = std::log(X * X);
    for (int i = 0; i < samples; ++i) {
        const double y = std::exp(lo + (hi - lo) * i / (samples - 1));
        const u64 n = std::max<u64>(1, static_cast<u64>(std::llround(y)));
        if (out.sample_points.empty() || out.sample_points.back() != n) out.sample_points.push_back(std::min(n, Y));
    }
    out.sample_points.erase(std::unique(out.sample_points.begin(), out.sample_points.end()), out.sample_points.end());

    const auto vals = f.eval_range(Y, sieve);
    auto chars = enumerate_characters(q);
    std::vector<double> s(chars.size(), 0.0);
    parallel_for(chars.size(), [&](std::size_t i) {
        std::vector<cplx> cbar(q);
        for (u64 m = 0; m < q; ++m) cbar[m] = std::conj(chars[i](static_cast<i64>(m)));
        KahanSum acc;
        std::size_t next = 0;
        double best = 0.0;
        for (u64 n = 1; n <= Y && next < out.sample_points.size(); ++n) {
            acc.add(vals[n] * cbar[n % q]);
            if (n == out.sample_points[next]) {
                best = std::max(best, std::abs(acc.value()) / static_cast<double>(n));
                ++next;
            }
        }
        s[i] = best;
    });
    std::vector<std::size_t> order(chars.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    for (std::size_t i : order) {
        out.characters.push_back(chars[i]);
        out.s_values.push_back(s[i]);
    }
    return out;
}

double pretentious_distance(const MultFunc& f, const DirichletCharacter& psi, double t, double y, double x,
                            const SieveTable& sieve) {
    if (x > static_cast<double>(sieve.limit())) throw DomainError("x exceeds the sieve limit");
    double acc = 0.0;
    for (u64 p : sieve.primes_upto(static_cast<u64>(x))) {
        if (static_cast<double>(p) <= y) continue;
        const cplx v = f.at_prime(p) * std::conj(psi(static_cast<i64>(p))) * nit(static_cast<double>(p), -t);
        acc += (1.0 - v.real()) / static_cast<double>(p);
    }
    return acc;
}

BrudernReport brudern_check(const MultFunc& f, u64 x, double threshold, const SieveTable& sieve, u64 max_conductor) {
    if (x < 3) throw DomainError("Brudern check needs x >= 3");
    const double x2 = static_cast<double>(x) * static_cast<double>(x);
    if (x2 > static_cast<double>(sieve.limit())) throw DomainError("x^2 exceeds the sieve limit");
    std::vector<DirichletCharacter> candidates;
    for (u64 r = 1; r <= max_conductor; ++r)
        for (auto& psi : primitive_characters(r)) candidates.push_back(std::move(psi));
    std::vector<TSelection> sels(candidates.size());
    const double xd = static_cast<double>(x);
    parallel_for(candidates.size(), [&](std::size_t i) {
        sels[i] = select_t(f * MultFunc::character(candidates[i].conj()), xd, std::log(xd), sieve);
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < sels.size(); ++i)
        if (sels[i].score > sels[best].score) best = i;
    BrudernReport rep{candidates[best], sels[best].t, 0.0, 0.0, 0.0, false};
    rep.distance_x = pretentious_distance(f, rep.psi, rep.t, 1.0, xd, sieve);
    rep.distance_x2 = pretentious_distance(f, rep.psi, rep.t, 1.0, x2, sieve);
    rep.increment = rep.distance_x2 - rep.distance_x;
    rep.bounded = rep.increment <= threshold;
    return rep;
}

}  // namespace pretsums
