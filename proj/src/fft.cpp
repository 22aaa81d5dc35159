#include "hml/fft.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace hml {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

namespace {

void bit_reverse(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace

namespace {

// w[k] = exp(-2 pi i k/n), k < n/2, cached per size (a few MB at the sizes
// the norm iterations reach).
const std::vector<cplx>& twiddles(std::size_t n) {
    thread_local std::map<std::size_t, std::vector<cplx>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cplx> w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = -2.0 * M_PI * (static_cast<double>(k) / static_cast<double>(n));
        w[k] = cplx(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(w)).first->second;
}

}  // namespace

void fft_inplace(std::vector<cplx>& a) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft_inplace: size must be a power of two");
    if (n == 1) return;
    bit_reverse(a);
    const std::vector<cplx>& w = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cplx u = a[i + j];
                cplx v = a[i + j + half] * w[j * stride];
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

void ifft_inplace(std::vector<cplx>& a) {
    for (auto& z : a) z = std::conj(z);
    fft_inplace(a);
    const double inv = a.empty() ? 1.0 : 1.0 / static_cast<double>(a.size());
    for (auto& z : a) z = std::conj(z) * inv;
}

}  // namespace hml
