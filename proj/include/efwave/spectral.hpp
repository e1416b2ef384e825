#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "efwave/signal.hpp"

// Discrete Fourier machinery with one pinned sign convention:
//
//   forward:  X_m = dt * sum_j x_j e^{-i w_m t_j},   w_m = 2 pi fs m / n
//   inverse:  x_j = (fs/n) * sum_m X_m e^{+i w_m t_j}
//
// Under this convention the causal kernel e^{-a t} H(t) transforms to
// 1/(a + i w).  The material models are written as sums of 1/(alpha - i w),
// which lives on the mirrored axis; everything spectral therefore evaluates
// the models at -w (RationalFRF::value_spectral).  The convention-pin test in
// the spectral suite is the normative check.

namespace efwave {

using cplx = std::complex<double>;

struct Spectrum {
    double fs = 0.0;
    double t0 = 0.0;
    std::size_t n = 0; ///< power of two
    std::vector<cplx> bins; ///< standard DFT order: m = 0..n/2, then negative

    /// Signed angular frequency of storage index i, in (-pi fs, pi fs].
    double omega_at(std::size_t i) const {
        const auto m = (i <= n / 2) ? static_cast<std::ptrdiff_t>(i)
                                    : static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n);
        return 2.0 * std::numbers::pi * fs * static_cast<double>(m) / static_cast<double>(n);
    }
};

namespace detail {

/// In-place iterative radix-2 FFT. sign = -1 forward kernel, +1 inverse kernel
/// (no normalization).
inline void fft_radix2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) { // bit reversal
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t v) { return std::bit_ceil(v); }

} // namespace detail

/// Forward transform with zero padding to next_pow2(len) * pad_factor
/// (rounded up to a power of two).
inline Spectrum forward(const SampledSignal& signal, std::size_t pad_factor = 1) {
    if (signal.samples.empty()) throw ValidationError("spectral: empty input signal");
    if (pad_factor < 1) throw ValidationError("spectral: pad_factor must be >= 1");
    const std::size_t n = detail::next_pow2(detail::next_pow2(signal.size()) * pad_factor);
    Spectrum s;
    s.fs = signal.fs;
    s.t0 = signal.t0;
    s.n = n;
    s.bins.assign(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < signal.size(); ++i) s.bins[i] = cplx(signal.samples[i], 0.0);
    detail::fft_radix2(s.bins, -1);
    const double dt = 1.0 / signal.fs;
    for (auto& b : s.bins) b *= dt;
    return s;
}

using TransferFn = std::function<cplx(double)>;

/// Multiply each bin by H(w_m).  With conjugate_fill, H is evaluated only for
/// w >= 0 and negative bins are filled by conjugation; otherwise H must obey
/// H(-w) = conj(H(w)) (spot-checked on a few bins).  The Nyquist bin is forced
/// real so the inverse stays exactly real for real inputs.
inline Spectrum apply_transfer(const Spectrum& spec, const TransferFn& H,
                               bool conjugate_fill = false) {
    Spectrum out = spec;
    const std::size_t n = spec.n;
    std::vector<cplx> h(n / 2 + 1);
    for (std::size_t i = 0; i <= n / 2; ++i) {
        const double w = (i == n / 2) ? std::numbers::pi * spec.fs : spec.omega_at(i);
        const cplx v = H(w);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw TransferSingularityError("spectral: transfer not finite at omega = " +
                                           std::to_string(w));
        h[i] = v;
    }
    if (!conjugate_fill) {
        // spot check conjugate symmetry on a few interior bins
        for (std::size_t i = 1; i < n / 2; i += (n / 16) + 1) {
            const double w = spec.omega_at(i);
            const cplx hm = H(-w);
            if (!std::isfinite(hm.real()) || !std::isfinite(hm.imag()))
                throw TransferSingularityError("spectral: transfer not finite at omega = " +
                                               std::to_string(-w));
            if (std::abs(hm - std::conj(h[i])) > 1e-9 * (std::abs(h[i]) + 1.0))
                throw ValidationError("spectral: transfer violates conjugate symmetry");
        }
    }
    // Hermitian symmetry needs a real DC bin; under conjugate fill a stray
    // imaginary part of H(0) is dropped, mirroring the Nyquist treatment.
    out.bins[0] = spec.bins[0] * (conjugate_fill ? cplx(h[0].real(), 0.0) : h[0]);
    for (std::size_t i = 1; i < n / 2; ++i) {
        out.bins[i] = spec.bins[i] * h[i];
        out.bins[n - i] = spec.bins[n - i] * std::conj(h[i]);
    }
    out.bins[n / 2] = spec.bins[n / 2] * cplx(h[n / 2].real(), 0.0);
    return out;
}

struct InverseResult {
    SampledSignal signal;
    /// max |Im| / max |Re| of the raw inverse, before discarding Im.
    double imag_residue = 0.0;
};

/// Inverse transform followed by taking the real part.
inline InverseResult inverse_real(const Spectrum& spec) {
    std::vector<cplx> a = spec.bins;
    detail::fft_radix2(a, +1);
    const double scale = spec.fs / static_cast<double>(spec.n);
    double max_re = 0.0, max_im = 0.0;
    std::vector<double> samples(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const cplx v = a[i] * scale;
        samples[i] = v.real();
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
    }
    InverseResult r{SampledSignal(spec.fs, spec.t0, std::move(samples)),
                    (max_re > 0.0) ? max_im / max_re : max_im};
    return r;
}

} // namespace efwave
