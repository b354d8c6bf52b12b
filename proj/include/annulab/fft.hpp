#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace annulab {

/// In-place radix-2 FFT for power-of-two lengths. Forward transform uses the
/// e^{-i n theta} convention, so bin n of a real input holds
/// (1/N) * sum_k f(theta_k) e^{-i n theta_k} after `fft_forward_scaled`.
namespace fft {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void transform(std::span<std::complex<double>> a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double s = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= s;
    }
}

/// Fourier coefficients of a real ring: out[n] = (1/N) sum_k f_k e^{-i n theta_k}.
inline std::vector<std::complex<double>> forward_scaled(std::span<const double> ring) {
    std::vector<std::complex<double>> a(ring.begin(), ring.end());
    transform(a, false);
    const double s = 1.0 / static_cast<double>(a.size());
    for (auto& x : a) x *= s;
    return a;
}

/// Inverse of `forward_scaled`: f_k = sum_n out[n] e^{+i n theta_k}.
inline void inverse_scaled(std::span<std::complex<double>> bins, std::span<double> ring_out) {
    std::vector<std::complex<double>> a(bins.begin(), bins.end());
    transform(a, true);
    const double n = static_cast<double>(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) ring_out[k] = a[k].real() * n;
}

}  // namespace fft

}  // namespace annulab
