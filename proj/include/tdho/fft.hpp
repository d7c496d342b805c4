#pragma once

// Radix-2 complex FFT. Grids in this library are power-of-two by contract,
// so a self-contained iterative transform is enough; no planner state to
// share between threads.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace tdho {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Twiddle table for size n (half-length, forward sign), cached per thread.
inline const std::vector<cplx>& twiddles(std::size_t n) {
    thread_local std::vector<std::vector<cplx>> cache;  // indexed by log2(n)
    std::size_t lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    if (cache.size() <= lg) cache.resize(lg + 1);
    auto& tw = cache[lg];
    if (tw.size() != n / 2) {
        tw.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            double ang = -2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
            tw[k] = cplx(std::cos(ang), std::sin(ang));
        }
    }
    return tw;
}

}  // namespace detail

// In-place unnormalized DFT of length n = data.size() (power of two).
// forward: sum f_k e^{-2pi i jk/n};  inverse: conjugate kernel, still
// unnormalized (caller divides by n where needed).
inline void fft_inplace(cplx* data, std::size_t n, bool forward) {
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    if (n < 2) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    const auto& tw = detail::twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = tw[k * step];
                if (!forward) w = std::conj(w);
                cplx u = data[i + k];
                cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
            }
        }
    }
}

inline void fft_inplace(std::vector<cplx>& data, bool forward) {
    fft_inplace(data.data(), data.size(), forward);
}

}  // namespace tdho
