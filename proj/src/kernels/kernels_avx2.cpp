// AVX2+FMA variants.  This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime feature check (see dispatch.cpp).
//
// std::complex<double> is laid out as {re, im}, so one __m256d holds two
// complex values: [re0, im0, re1, im1].

#include "pretsums/kernels.hpp"

#include <algorithm>
#include <immintrin.h>

namespace pretsums::kernels {
namespace {

constexpr std::size_t kBlock = 256;

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (a * b) for two complex pairs
inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_sw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// [re0+re1, im0+im1]
inline cplx hsum2(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

inline double hsum4(__m256d v) {
    const cplx c = hsum2(v);
    return c.real() + c.imag();
}

inline cplx cmul1(cplx a, cplx b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        acc0 = _mm256_add_pd(acc0, cmul2(load2(a + k), load2(b + k)));
        acc1 = _mm256_add_pd(acc1, cmul2(load2(a + k + 2), load2(b + k + 2)));
    }
    for (; k + 2 <= n; k += 2) acc0 = _mm256_add_pd(acc0, cmul2(load2(a + k), load2(b + k)));
    cplx s = hsum2(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) s += cmul1(a[k], b[k]);
    return s;
}

void cmul_inplace_avx2(cplx* a, const cplx* b, std::size_t n) {
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) store2(a + k, cmul2(load2(a + k), load2(b + k)));
    for (; k < n; ++k) a[k] = cmul1(a[k], b[k]);
}

double norm2_avx2(const cplx* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d x0 = load2(a + k);
        const __m256d x1 = load2(a + k + 2);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    for (; k + 2 <= n; k += 2) {
        const __m256d x0 = load2(a + k);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    }
    double s = hsum4(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) s += std::norm(a[k]);
    return s;
}

void phasor_sweep_avx2(cplx* w, const cplx* r, std::size_t n, std::size_t steps, cplx* out) {
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const std::size_t hi = std::min(n, lo + kBlock);
        const std::size_t vec_hi = lo + ((hi - lo) & ~std::size_t{1});
        for (std::size_t s = 0; s < steps; ++s) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t k = lo; k < vec_hi; k += 2) {
                const __m256d wv = load2(w + k);
                acc = _mm256_add_pd(acc, wv);
                store2(w + k, cmul2(wv, load2(r + k)));
            }
            cplx sum = hsum2(acc);
            for (std::size_t k = vec_hi; k < hi; ++k) {
                sum += w[k];
                w[k] = cmul1(w[k], r[k]);
            }
            out[s] += sum;
        }
    }
}

void euler_log_sweep_avx2(const cplx* a, cplx* w, const cplx* r, std::size_t n, std::size_t steps,
                          double* out) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d third = _mm256_set1_pd(1.0 / 3.0);
    const __m256d three = _mm256_set1_pd(3.0);
    for (std::size_t lo = 0; lo < n; lo += kBlock) {
        const std::size_t hi = std::min(n, lo + kBlock);
        const std::size_t vec_hi = lo + ((hi - lo) & ~std::size_t{1});
        for (std::size_t s = 0; s < steps; ++s) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t k = lo; k < vec_hi; k += 2) {
                const __m256d wv = load2(w + k);
                const __m256d z = cmul2(load2(a + k), wv);
                const __m256d zr = _mm256_movedup_pd(z);
                const __m256d zi = _mm256_permute_pd(z, 0xF);
                const __m256d zr2 = _mm256_mul_pd(zr, zr);
                const __m256d zi2 = _mm256_mul_pd(zi, zi);
                // zr + (zr^2 - zi^2)/2 + zr (zr^2 - 3 zi^2)/3, duplicated in both lanes of a pair
                __m256d v = _mm256_fmadd_pd(half, _mm256_sub_pd(zr2, zi2), zr);
                const __m256d cubic = _mm256_mul_pd(zr, _mm256_fnmadd_pd(three, zi2, zr2));
                v = _mm256_fmadd_pd(third, cubic, v);
                acc = _mm256_add_pd(acc, v);
                store2(w + k, cmul2(wv, load2(r + k)));
            }
            // lanes 0 and 2 carry the two distinct values
            const cplx pair = hsum2(acc);
            double sum = pair.real();
            for (std::size_t k = vec_hi; k < hi; ++k) {
                const cplx z = cmul1(a[k], w[k]);
                const cplx z2 = cmul1(z, z);
                sum += z.real() + 0.5 * z2.real() + cmul1(z2, z).real() / 3.0;
                w[k] = cmul1(w[k], r[k]);
            }
            out[s] += sum;
        }
    }
}

}  // namespace

namespace detail {
const KernelTable avx2_table{cdot_avx2, cmul_inplace_avx2, norm2_avx2, phasor_sweep_avx2,
                             euler_log_sweep_avx2};
}

}  // namespace pretsums::kernels
