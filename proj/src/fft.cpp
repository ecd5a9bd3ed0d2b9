#include "pretsums/fft.hpp"

#include "pretsums/errors.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace pretsums {

namespace {
// planning is not thread-safe in FFTW; execution of distinct plans is
std::mutex plan_mutex;
}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<cplx> dft(const std::vector<cplx>& in, int sign) {
    const std::size_t n = in.size();
    if (n == 0) return {};
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!buf) throw DomainError("FFT allocation failed");
    fftw_plan plan;
    {
        std::lock_guard lock(plan_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    std::memcpy(buf, in.data(), sizeof(fftw_complex) * n);
    fftw_execute(plan);
    std::vector<cplx> out(n);
    std::memcpy(static_cast<void*>(out.data()), buf, sizeof(fftw_complex) * n);
    {
        std::lock_guard lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
    return out;
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t len = a.size() + b.size() - 1;
    const std::size_t n = next_pow2(len);
    std::vector<cplx> pa(n, cplx(0.0, 0.0)), pb(n, cplx(0.0, 0.0));
    std::copy(a.begin(), a.end(), pa.begin());
    std::copy(b.begin(), b.end(), pb.begin());
    auto fa = dft(pa, -1);
    const auto fb = dft(pb, -1);
    for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
    auto c = dft(fa, +1);
    c.resize(len);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : c) v *= scale;
    return c;
}

}  // namespace pretsums
