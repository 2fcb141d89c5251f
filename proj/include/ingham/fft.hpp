#ifndef INGHAM_FFT_HPP
#define INGHAM_FFT_HPP

// Self-contained complex FFT: iterative radix-2 with a tabulated twiddle
// basis, plus a Bluestein chirp-z fallback so arbitrary lengths work.
// Unnormalized in both directions; the grid layer owns all scaling.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "core.hpp"

namespace ingham::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Twiddles are read from a table filled by direct std::polar calls; the usual
// multiplicative recurrence drifts by O(n·eps), which the 1e-10 round-trip
// contract cannot afford at 2^20 points.
inline void fill_twiddles(std::vector<cd>& w, std::size_t n, bool inverse) {
    w.resize(n / 2);
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n / 2; ++j)
        w[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
}

inline void fft_pow2(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    static thread_local std::vector<cd> w;
    static thread_local std::size_t w_n = 0;
    static thread_local bool w_inv = false;
    if (w_n != n || w_inv != inverse) {
        fill_twiddles(w, n, inverse);
        w_n = n;
        w_inv = inverse;
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t blk = 0; blk < n; blk += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd t = a[blk + k + len / 2] * w[k * step];
                a[blk + k + len / 2] = a[blk + k] - t;
                a[blk + k] += t;
            }
        }
    }
}

} // namespace detail

/// In-place DFT of arbitrary length: X_k = sum_j a_j e^{∓2πi jk/n}
/// (minus for forward). No normalization.
inline void transform(std::vector<cd>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        detail::fft_pow2(a, inverse);
        return;
    }
    // Bluestein: jk = (j² + k² − (j−k)²)/2 turns the DFT into a convolution
    // with the chirp c_j = e^{±πi j²/n}. Phases use j² mod 2n to keep the
    // argument reduction exact for large j.
    const double sign = inverse ? 1.0 : -1.0;
    const std::size_t m = next_pow2(2 * n + 1);
    std::vector<cd> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t q = (j * j) % (2 * n);
        chirp[j] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n));
    }
    std::vector<cd> u(m, cd{0.0, 0.0}), v(m, cd{0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) u[j] = a[j] * chirp[j];
    v[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) v[j] = v[m - j] = std::conj(chirp[j]);
    detail::fft_pow2(u, false);
    detail::fft_pow2(v, false);
    for (std::size_t j = 0; j < m; ++j) u[j] *= v[j];
    detail::fft_pow2(u, true);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = u[j] * chirp[j] * scale;
}

} // namespace ingham::fft

#endif // INGHAM_FFT_HPP
