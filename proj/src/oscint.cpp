#include "pretsums/oscint.hpp"

#include "pretsums/errors.hpp"
#include "pretsums/kernels.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace pretsums {

namespace {

constexpr double kLogFloor = -40.0;       // e^{-40} bounds the discarded tail
constexpr double kMaxPhasePerPanel = 6.0;  // radians
constexpr double kMaxPanelWidth = 0.5;

using GL16 = boost::math::quadrature::gauss<double, 16>;

// nodes and weights of the 16-point rule on [-1, 1]
const std::vector<std::pair<double, double>>& gl16() {
    static const std::vector<std::pair<double, double>> rule = [] {
        std::vector<std::pair<double, double>> r;
        const auto& a = GL16::abscissa();
        const auto& w = GL16::weights();
        for (std::size_t i = 0; i < a.size(); ++i) {
            r.emplace_back(a[i], w[i]);
            if (a[i] != 0.0) r.emplace_back(-a[i], w[i]);
        }
        return r;
    }();
    return rule;
}

}  // namespace

OscNodes osc_nodes(double gamma_max, double t) {
    OscNodes nodes;
    const double g = std::fabs(gamma_max), at = std::fabs(t);
    const auto& rule = gl16();
    double hi = 0.0;
    while (hi > kLogFloor) {
        const double rate = at + kTwoPi * g * std::exp(hi);
        const double h = std::min({kMaxPanelWidth, kMaxPhasePerPanel / std::max(rate, 1e-300), hi - kLogFloor});
        const double mid = hi - 0.5 * h, half = 0.5 * h;
        for (const auto& [a, w] : rule) {
            const double u = mid + half * a;
            const double ew = std::exp(u);
            nodes.node.push_back(ew);
            nodes.weight.push_back(half * w * ew * cplx(std::cos(t * u), std::sin(t * u)));
        }
        hi -= h;
    }
    return nodes;
}

cplx osc_J(double gamma, double t) {
    if (gamma == 0.0) return 1.0 / cplx(1.0, t);
    if (t == 0.0) return (expi2pi(gamma) - 1.0) / cplx(0.0, kTwoPi * gamma);
    const OscNodes nodes = osc_nodes(gamma, t);
    KahanSum s;
    for (std::size_t k = 0; k < nodes.node.size(); ++k) s.add(nodes.weight[k] * expi2pi(gamma * nodes.node[k]));
    return s.value();
}

OscResult osc_integral(double x, double beta, double t) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("oscillatory integral needs x > 0");
    if (!std::isfinite(beta) || !std::isfinite(t)) throw DomainError("oscillatory integral needs finite beta and t");
    const cplx xit = nit(x, t);
    if (beta == 0.0) return {xit / cplx(1.0, t), "closed-form-beta0"};
    const double gamma = x * beta;
    if (t == 0.0) return {osc_J(gamma, 0.0), "closed-form-t0"};
    return {xit * osc_J(gamma, t), "quadrature"};
}

double osc_bound(double x, double beta, double t) {
    double m = 1.0;
    const double at = std::fabs(t);
    if (at > 0.0) m = std::min(m, 1.0 / std::sqrt(at));
    const double bx = std::fabs(beta) * x;
    if (bx > 0.0) m = std::min(m, (1.0 + std::sqrt(at)) / bx);
    return 8.0 * m;
}

PlancherelResult plancherel_check(double delta, double t, double x) {
    if (!(delta > 0.0)) throw DomainError("Plancherel window must be positive");
    if (!(x > 0.0)) throw DomainError("oscillatory integral needs x > 0");
    // |I(x, beta, t)| = |J(x beta, t)|, so x d beta = d g removes x entirely
    std::size_t intervals = static_cast<std::size_t>(std::ceil(2.0 * delta * 64.0));
    intervals += intervals % 2;
    const double step = 2.0 * delta / static_cast<double>(intervals);
    const std::size_t points = intervals + 1;

    const OscNodes nodes = osc_nodes(delta, t);
    const std::size_t n = nodes.node.size();
    std::vector<cplx> w(n), r(n), J(points, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = nodes.weight[k] * expi2pi(-delta * nodes.node[k]);
        r[k] = expi2pi(step * nodes.node[k]);
    }
    kernels::phasor_sweep(w.data(), r.data(), n, points, J.data());

    double sum = 0.0;
    for (std::size_t s = 0; s < points; ++s) {
        const double c = (s == 0 || s + 1 == points) ? 1.0 : (s % 2 ? 4.0 : 2.0);
        sum += c * std::norm(J[s]);
    }
    PlancherelResult res{};
    res.value = sum * step / 3.0;
    res.deficit = 1.0 - res.value;
    res.scale = (1.0 + std::fabs(t)) / delta;
    res.constant = res.deficit / res.scale;
    res.grid_points = points;
    return res;
}

}  // namespace pretsums
