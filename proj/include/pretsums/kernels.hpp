#pragma once
// Data-parallel inner loops.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant.  The active variant is picked once at runtime from the
// CPU feature bits; PRETSUMS_SIMD=scalar forces the reference path.  The
// equivalence tests call both variants directly through kernel_table().

#include <complex>
#include <cstddef>
#include <string_view>

namespace pretsums::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
    // sum_k a[k] * b[k]
    cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
    // a[k] *= b[k]
    void (*cmul_inplace)(cplx* a, const cplx* b, std::size_t n);
    // sum_k |a[k]|^2
    double (*norm2)(const cplx* a, std::size_t n);
    // for s in [0, steps): out[s] += sum_k w[k];  w[k] *= r[k]
    void (*phasor_sweep)(cplx* w, const cplx* r, std::size_t n, std::size_t steps, cplx* out);
    // for s in [0, steps): z = a[k]*w[k]; out[s] += Re(z + z^2/2 + z^3/3);  w[k] *= r[k]
    // (third-order expansion of -log|1 - z|, valid for |z| small)
    void (*euler_log_sweep)(const cplx* a, cplx* w, const cplx* r, std::size_t n,
                            std::size_t steps, double* out);
};

const KernelTable& kernel_table(Isa isa);
bool isa_supported(Isa isa);
Isa active_isa();
std::string_view isa_name(Isa isa);

inline const KernelTable& active() { return kernel_table(active_isa()); }

inline cplx cdot(const cplx* a, const cplx* b, std::size_t n) { return active().cdot(a, b, n); }
inline void cmul_inplace(cplx* a, const cplx* b, std::size_t n) { active().cmul_inplace(a, b, n); }
inline double norm2(const cplx* a, std::size_t n) { return active().norm2(a, n); }
inline void phasor_sweep(cplx* w, const cplx* r, std::size_t n, std::size_t steps, cplx* out) {
    active().phasor_sweep(w, r, n, steps, out);
}
inline void euler_log_sweep(const cplx* a, cplx* w, const cplx* r, std::size_t n,
                            std::size_t steps, double* out) {
    active().euler_log_sweep(a, w, r, n, steps, out);
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace pretsums::kernels
