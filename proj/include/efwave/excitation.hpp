#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "efwave/signal.hpp"

namespace efwave {

/// Windowed multi-sine boundary pulse.  The default coefficients make the
/// pulse C^6-smooth at both ends of its support (0, 1/fc).
struct ExcitationSpec {
    double fc = 700.0; ///< central frequency, Hz
    std::array<double, 4> amplitudes{1.0, -21.0 / 32.0, 63.0 / 768.0, -1.0 / 512.0};
    std::array<double, 4> beta{1.0, 2.0, 4.0, 8.0};

    ExcitationSpec() = default;
    explicit ExcitationSpec(double fc_) : fc(fc_) {
        if (!(fc > 0.0)) throw ValidationError("excitation: fc must be positive");
    }
    ExcitationSpec(double fc_, std::array<double, 4> a, std::array<double, 4> b)
        : fc(fc_), amplitudes(a), beta(b) {
        if (!(fc > 0.0)) throw ValidationError("excitation: fc must be positive");
    }

    /// True when the odd endpoint-derivative sums of order 1, 3, 5 vanish
    /// (the even orders vanish identically for a sine sum).  Custom
    /// coefficients failing this are usable but flagged nonsmooth.
    bool is_smooth(double tol = 1e-12) const {
        for (int order : {1, 3, 5}) {
            double s = 0.0, scale = 0.0;
            for (int m = 0; m < 4; ++m) {
                const double term = amplitudes[m] * std::pow(beta[m], order);
                s += term;
                scale += std::abs(term);
            }
            if (std::abs(s) > tol * (scale > 0 ? scale : 1.0)) return false;
        }
        return true;
    }
};

/// Pulse value at time t (Pa).  Zero outside the open interval (0, 1/fc);
/// at t = 1/fc all four sines vanish, so the edge value is 0 by both branches.
inline double p0(const ExcitationSpec& spec, double t) {
    if (!(t > 0.0) || !(t < 1.0 / spec.fc)) return 0.0;
    const double wc = 2.0 * std::numbers::pi * spec.fc;
    double s = 0.0;
    for (int m = 0; m < 4; ++m) s += spec.amplitudes[m] * std::sin(spec.beta[m] * wc * t);
    return s;
}

/// Sample the pulse at t_n = n/fs for n = 0 .. ceil(duration*fs)-1.
inline SampledSignal sample(const ExcitationSpec& spec, double fs, double duration) {
    if (!(fs >= 8.0 * spec.fc))
        throw ValidationError("excitation: sample rate below the 8*fc anti-alias floor");
    if (!(duration >= 1.0 / spec.fc))
        throw ValidationError("excitation: duration shorter than the pulse support 1/fc");
    const auto n = static_cast<std::size_t>(std::ceil(duration * fs));
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = p0(spec, static_cast<double>(i) / fs);
    return {fs, 0.0, std::move(samples)};
}

/// Integer numerators of the endpoint-derivative sums sum_m a_m beta_m^n for
/// the default coefficients, over the common denominator 1536.  Exact in
/// 64-bit integer arithmetic; used by the smoothness tests.
inline std::int64_t default_derivative_sum_numerator(int order) {
    // a = (1536, -1008, 126, -3)/1536, beta = (1, 2, 4, 8)
    const std::int64_t num[4] = {1536, -1008, 126, -3};
    const std::int64_t beta[4] = {1, 2, 4, 8};
    std::int64_t s = 0;
    for (int m = 0; m < 4; ++m) {
        std::int64_t p = 1;
        for (int j = 0; j < order; ++j) p *= beta[m];
        s += num[m] * p;
    }
    return s;
}

} // namespace efwave
