#include "pretsums/kernels.hpp"

#include <algorithm>

namespace pretsums::kernels {
namespace {

constexpr std::size_t kBlock = 256;

cplx cdot_ref(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
    }
    return {re, im};
}

void cmul_inplace_ref(cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double re = a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
        const double im = a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
        a[k] = {re, im};
    }
}

double norm2_ref(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += a[k].real() * a[k].real() + a[k].imag() * a[k].imag();
    return s;
}

void phasor_sweep_ref(cplx* w, const cplx* r, std::size_t n, std::size_t steps, cplx* out) {
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t s = 0; s < steps; ++s) {
            double re = 0.0, im = 0.0;
            for (std::size_t k = lo; k < hi; ++k) {
                const double wr = w[k].real(), wi = w[k].imag();
                re += wr;
                im += wi;
                w[k] = {wr * r[k].real() - wi * r[k].imag(), wr * r[k].imag() + wi * r[k].real()};
            }
            out[s] += cplx(re, im);
        }
    }
}

void euler_log_sweep_ref(const cplx* a, cplx* w, const cplx* r, std::size_t n, std::size_t steps,
                         double* out) {
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t s = 0; s < steps; ++s) {
            double acc = 0.0;
            for (std::size_t k = lo; k < hi; ++k) {
                const double wr = w[k].real(), wi = w[k].imag();
                const double zr = a[k].real() * wr - a[k].imag() * wi;
                const double zi = a[k].real() * wi + a[k].imag() * wr;
                const double z2r = zr * zr - zi * zi;
                const double z2i = 2.0 * zr * zi;
                const double z3r = z2r * zr - z2i * zi;
                acc += zr + 0.5 * z2r + z3r / 3.0;
                w[k] = {wr * r[k].real() - wi * r[k].imag(), wr * r[k].imag() + wi * r[k].real()};
            }
            out[s] += acc;
        }
    }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{cdot_ref, cmul_inplace_ref, norm2_ref, phasor_sweep_ref,
                               euler_log_sweep_ref};
}

}  // namespace pretsums::kernels
