#pragma once
// I(x, beta, t) = (1/x) int_0^x e(beta v) v^{it} dv
//              = x^{it} J(x beta, t),   J(g, t) = int_0^1 e(g w) w^{it} dw.
//
// J is integrated in u = ln w over [-40, 0] with 16-point Gauss-Legendre
// panels narrow enough that the phase t u + 2 pi g e^u turns by at most a few
// radians across each one.

#include "pretsums/numeric.hpp"

#include <string>
#include <vector>

namespace pretsums {

struct OscResult {
    cplx value;
    std::string method;  // "closed-form-beta0", "closed-form-t0", "quadrature"
};

// Quadrature nodes for J(g, t) valid for every |g| <= gamma_max:
// J(g, t) ~= sum_k weight[k] e(g node[k]).
struct OscNodes {
    std::vector<double> node;   // w_k in (0, 1]
    std::vector<cplx> weight;   // GL weight * e^{u_k} * e^{i t u_k}
};
OscNodes osc_nodes(double gamma_max, double t);

cplx osc_J(double gamma, double t);
OscResult osc_integral(double x, double beta, double t);
inline cplx osc_I(double x, double beta, double t) { return osc_integral(x, beta, t).value; }

// 8 min{1, 1/sqrt|t|, (1 + sqrt|t|)/(|beta| x)}
double osc_bound(double x, double beta, double t);

struct PlancherelResult {
    double value;       // x int_{-Delta/x}^{Delta/x} |I|^2 d beta
    double deficit;     // 1 - value
    double scale;       // (1 + |t|) / Delta
    double constant;    // deficit / scale
    std::size_t grid_points;
};
// Simpson's rule on a uniform grid in g = x beta with spacing <= 1/64
PlancherelResult plancherel_check(double delta, double t, double x);

}  // namespace pretsums
