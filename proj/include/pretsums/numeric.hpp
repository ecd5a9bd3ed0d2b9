#pragma once
// Small numeric helpers shared by every module.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace pretsums {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e(theta) = exp(2 pi i theta), with theta first reduced to [-1/2, 1/2].
inline cplx expi2pi(double theta) {
    const double r = theta - std::nearbyint(theta);
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

// e(n * alpha) for integer n; n * alpha is split exactly with an FMA so the
// reduction mod 1 loses nothing to the size of n.
inline cplx expi2pi_mul(std::int64_t n, double alpha) {
    const double nd = static_cast<double>(n);
    const double hi = nd * alpha;
    const double lo = std::fma(nd, alpha, -hi);
    const double r = (hi - std::nearbyint(hi)) + lo;
    return expi2pi(r);
}

// e(num / den) exactly reduced, exact at quarter turns.
inline cplx root_of_unity(std::int64_t num, std::int64_t den) {
    std::int64_t k = num % den;
    if (k < 0) k += den;
    if (k == 0) return {1.0, 0.0};
    if (4 * k == den) return {0.0, 1.0};
    if (2 * k == den) return {-1.0, 0.0};
    if (4 * k == 3 * den) return {0.0, -1.0};
    return expi2pi(static_cast<double>(k) / static_cast<double>(den));
}

// n^{it} = exp(i t log n)
inline cplx nit(double n, double t) {
    const double ph = t * std::log(n);
    return {std::cos(ph), std::sin(ph)};
}

// Neumaier-compensated complex accumulator.
class KahanSum {
public:
    void add(cplx v) {
        add1(sum_re_, c_re_, v.real());
        add1(sum_im_, c_im_, v.imag());
    }
    cplx value() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

private:
    static void add1(double& sum, double& c, double v) {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    double sum_re_ = 0.0, c_re_ = 0.0, sum_im_ = 0.0, c_im_ = 0.0;
};

}  // namespace pretsums
