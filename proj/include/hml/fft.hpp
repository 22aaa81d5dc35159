#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hml {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);
std::size_t next_pow2(std::size_t n);

// In-place radix-2 transform, sign convention X[k] = sum_j x[j] e^{-2pi i jk/n}.
// Twiddles come from a per-call table of exact angles, so rounding is
// O(log n * eps) with no running-product drift. Size must be a power of two.
void fft_inplace(std::vector<cplx>& a);

// Inverse of fft_inplace, including the 1/n factor.
void ifft_inplace(std::vector<cplx>& a);

}  // namespace hml
