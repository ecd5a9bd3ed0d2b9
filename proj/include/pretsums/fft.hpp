#pragma once
// Thin wrapper over FFTW's complex DFT.

#include "pretsums/numeric.hpp"

#include <vector>

namespace pretsums {

// out[k] = sum_n in[n] e(sign * nk / N), sign = +1 or -1 (unnormalized)
std::vector<cplx> dft(const std::vector<cplx>& in, int sign);

// linear convolution of a and b (length a.size() + b.size() - 1)
std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

std::size_t next_pow2(std::size_t n);

}  // namespace pretsums
