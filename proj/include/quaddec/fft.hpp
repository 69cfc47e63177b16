#ifndef QUADDEC_FFT_HPP
#define QUADDEC_FFT_HPP

#include "quaddec/types.hpp"

namespace quaddec {

// In-place radix-2 FFT; size must be a power of two. sign = -1 forward.
inline void fft(std::vector<cplx>& a, int sign) {
    const size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw domain_error("fft: size must be a power of two");
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        double ang = sign * 2.0 * pi / double(len);
        cplx wl = std::polar(1.0, ang);
        for (size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (size_t j = 0; j < len / 2; ++j) {
                cplx u = a[i + j], v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

// Fourier coefficients of samples at theta_j = 2 pi j / N: coefficient of
// e^{i k theta} lands at index k (negative k wraps to N + k).
inline std::vector<cplx> fourier_coefficients(std::vector<cplx> samples) {
    const double n = double(samples.size());
    fft(samples, -1);
    for (cplx& c : samples) c /= n;
    return samples;
}

}  // namespace quaddec

#endif
