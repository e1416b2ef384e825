#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "efwave/errors.hpp"

// Complex-argument Bessel/Hankel evaluation for the cylindrical-wave solution.
// Three evaluation routes, each accurate to well below 1e-10 on its region:
//   |z| <= 8           Maclaurin-type series, accumulated in long double
//   |z| > 8, Im z <= 0 Hankel functions from the K_nu(iz) integral
//                      representation via Gauss-Hermite quadrature, J_nu from
//                      Miller's backward recurrence, Y_nu = -i(J_nu - H_nu^(2))
//   Im z > 0           reduction by conjugate symmetry (best effort; the decay
//                      branch of k keeps production arguments in Im z <= 0)
// Operational domain: Re z >= 0 for y0/y1/hankel; |Im z| below the overflow
// guard everywhere.

namespace efwave::specfun {

using cplx = std::complex<double>;
using cld = std::complex<long double>;

/// Arguments with |Im z| beyond this raise RangeError (e^{|Im z|} factors
/// would overflow double).
inline constexpr double imag_overflow_guard = 600.0;

struct HankelValue {
    cplx value;  ///< H^(2)(z)
    cplx scaled; ///< H^(2)(z) * e^{+iz}, slowly varying in the lower half-plane
};

namespace detail {

inline constexpr long double pi_l = std::numbers::pi_v<long double>;
/// Euler-Mascheroni constant to 20 digits.
inline constexpr long double euler_gamma_l = 0.57721566490153286061L;

// ---------------------------------------------------------------- quadrature

/// Gauss-Hermite nodes/weights (weight e^{-x^2} on R), order 64.
/// Nodes by interlacing bisection on the orthonormal recurrence, weights as
/// Christoffel numbers. Computed once at first use.
struct GaussHermite {
    static constexpr int n = 64;
    std::array<long double, n> x{};
    std::array<long double, n> w{};

    GaussHermite() {
        auto eval = [](int order, long double t) {
            // orthonormal Hermite h_k(t), returns h_order
            long double hm = 0.0L;
            long double h = 0.7511255444649424829L; // pi^{-1/4}
            for (int k = 0; k < order; ++k) {
                const long double hp =
                    t * std::sqrt(2.0L / (k + 1)) * h - std::sqrt((long double)k / (k + 1)) * hm;
                hm = h;
                h = hp;
            }
            return h;
        };
        std::array<long double, n> roots{};
        int nroots = 1;
        roots[0] = 0.0L; // root of h_1
        for (int order = 2; order <= n; ++order) {
            std::array<long double, n> next{};
            const long double bound = std::sqrt(2.0L * order + 1.0L) + 1.0L;
            for (int i = 0; i <= nroots; ++i) {
                long double lo = (i == 0) ? -bound : roots[i - 1];
                long double hi = (i == nroots) ? bound : roots[i];
                long double flo = eval(order, lo);
                for (int it = 0; it < 90; ++it) {
                    const long double mid = 0.5L * (lo + hi);
                    const long double fm = eval(order, mid);
                    if ((fm > 0) == (flo > 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                next[i] = 0.5L * (lo + hi);
            }
            nroots = order;
            roots = next;
        }
        for (int i = 0; i < n; ++i) {
            x[i] = roots[i];
            long double hm = 0.0L, h = 0.7511255444649424829L, s = h * h;
            for (int k = 0; k < n - 1; ++k) {
                const long double hp = x[i] * std::sqrt(2.0L / (k + 1)) * h -
                                       std::sqrt((long double)k / (k + 1)) * hm;
                hm = h;
                h = hp;
                s += h * h;
            }
            w[i] = 1.0L / s;
        }
    }
};

inline const GaussHermite& gauss_hermite() {
    static const GaussHermite gh;
    return gh;
}

// -------------------------------------------------------------------- series

inline cld j0_series(cld z) {
    const cld q = 0.25L * z * z;
    cld term(1.0L, 0.0L), sum = term;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (long double)(m * (long double)m);
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum)) break;
    }
    return sum;
}

inline cld j1_series(cld z) {
    const cld q = 0.25L * z * z;
    cld term(1.0L, 0.0L), sum = term;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (long double)(m * (long double)(m + 1));
        sum += term;
        if (std::abs(term) < 1e-24L * std::abs(sum)) break;
    }
    return 0.5L * z * sum;
}

inline cld y0_series(cld z) {
    const cld q = 0.25L * z * z;
    cld term(1.0L, 0.0L), sum(0.0L, 0.0L);
    long double harmonic = 0.0L;
    for (int m = 1; m < 80; ++m) {
        term *= q / (long double)(m * (long double)m);
        harmonic += 1.0L / m;
        const cld contrib = ((m & 1) ? 1.0L : -1.0L) * harmonic * term;
        sum += contrib;
        if (std::abs(contrib) < 1e-24L * (std::abs(sum) + 1e-30L) && m > 4) break;
    }
    return (2.0L / pi_l) * ((std::log(0.5L * z) + euler_gamma_l) * j0_series(z) + sum);
}

inline cld y1_series(cld z) {
    const cld q = 0.25L * z * z;
    cld term(1.0L, 0.0L), sum(0.0L, 0.0L);
    long double hm = 0.0L, hm1 = 1.0L; // H_m and H_{m+1}
    sum = term * (hm + hm1);
    for (int m = 1; m < 80; ++m) {
        term *= -q / (long double)(m * (long double)(m + 1));
        hm += 1.0L / m;
        hm1 += 1.0L / (m + 1);
        const cld contrib = (hm + hm1) * term;
        sum += contrib;
        if (std::abs(contrib) < 1e-24L * (std::abs(sum) + 1e-30L) && m > 4) break;
    }
    return (2.0L / pi_l) * (std::log(0.5L * z) + euler_gamma_l) * j1_series(z) -
           2.0L / (pi_l * z) - (z / (2.0L * pi_l)) * sum;
}

// ------------------------------------------------------- Miller's recurrence

/// J0 and J1 by backward recurrence, normalized against e^{iz} (the dominant
/// exponential for Im z <= 0, so the normalizing sum has no cancellation).
struct J01 {
    cld j0, j1;
};

inline J01 miller_j01(cld z) {
    const bool conj = z.imag() > 0.0L;
    if (conj) z = std::conj(z);
    const long double az = std::abs(z);
    int nstart = (int)(az + 14.0L + 8.0L * std::cbrt(az)) + 1;
    if (nstart % 2) ++nstart;
    // e^{iz} = sum_n c_n J_n with c_0 = 1 and c_n cycling (2i, -2, -2i, 2)
    auto coef = [](int m) -> cld {
        if (m == 0) return {1.0L, 0.0L};
        switch (m % 4) {
        case 1: return {0.0L, 2.0L};
        case 2: return {-2.0L, 0.0L};
        case 3: return {0.0L, -2.0L};
        default: return {2.0L, 0.0L};
        }
    };
    cld fp(0.0L, 0.0L), f(1e-60L, 0.0L);
    cld norm = coef(nstart) * f, f0, f1;
    for (int n = nstart; n >= 1; --n) {
        const cld fm = (2.0L * n / z) * f - fp;
        fp = f;
        f = fm;
        const int m = n - 1;
        norm += coef(m) * f;
        if (m == 1) f1 = f;
        if (m == 0) f0 = f;
        if (std::abs(f.real()) > 1e4000L || std::abs(f.imag()) > 1e4000L) {
            const long double s = 1e-4000L;
            fp *= s;
            f *= s;
            norm *= s;
            f0 *= s;
            f1 *= s;
        }
    }
    const cld scale = std::exp(cld(0.0L, 1.0L) * z) / norm;
    J01 r{f0 * scale, f1 * scale};
    if (conj) {
        r.j0 = std::conj(r.j0);
        r.j1 = std::conj(r.j1);
    }
    return r;
}

// --------------------------------------------- K_nu(iz) integral, |z| large

/// Slowly varying factors S0, S1 of K0, K1 at w = iz:
///   K_nu(w) = sqrt(pi/(2w)) e^{-w} S_nu(w)
/// with S from the DLMF 10.32.8 representation, transformed to a
/// Gauss-Hermite integral. Valid for arg w in [-pi/2, pi/2], i.e. Im z <= 0.
struct K01Scaled {
    cld s0, s1;
};

inline K01Scaled k01_scaled_factors(cld w) {
    const auto& gh = gauss_hermite();
    cld s0(0.0L, 0.0L), s1(0.0L, 0.0L);
    const cld inv2w = 0.5L / w;
    for (int i = 0; i < GaussHermite::n; ++i) {
        const long double x2 = gh.x[i] * gh.x[i];
        const cld g = std::sqrt(1.0L + x2 * inv2w);
        s0 += gh.w[i] / g;
        s1 += gh.w[i] * x2 * g;
    }
    const long double inv_sqrt_pi = 0.5641895835477562869L;
    return {s0 * inv_sqrt_pi, s1 * 2.0L * inv_sqrt_pi};
}

struct H01Scaled {
    cld h0_scaled; ///< H0^(2)(z) e^{iz}
    cld h1_scaled; ///< H1^(2)(z) e^{iz}
};

/// Scaled Hankel functions of the second kind for Im z <= 0, |z| >~ 7 via
///   H0^(2)(z) = (2i/pi) K0(iz),  H1^(2)(z) = -(2/pi) K1(iz).
inline H01Scaled hankel01_2_scaled_integral(cld z) {
    const cld w = cld(0.0L, 1.0L) * z;
    const auto s = k01_scaled_factors(w);
    const cld pref = std::sqrt(pi_l / (2.0L * w)); // e^{-w} e^{iz} = 1
    return {cld(0.0L, 2.0L / pi_l) * pref * s.s0, cld(-2.0L / pi_l, 0.0L) * pref * s.s1};
}

inline void check_guard(cplx z) {
    if (std::abs(z.imag()) > imag_overflow_guard)
        throw RangeError("specfun: |Im z| exceeds the overflow guard");
}

inline constexpr double series_radius = 8.0;

} // namespace detail

/// Bessel function of the first kind, order zero.
inline cplx j0(cplx z) {
    detail::check_guard(z);
    cld zl(z.real(), z.imag());
    if (zl.real() < 0.0L) zl = -zl; // J0 is even
    if (std::abs(z) <= detail::series_radius) return cplx(detail::j0_series(zl));
    return cplx(detail::miller_j01(zl).j0);
}

/// Bessel function of the first kind, order one.
inline cplx j1(cplx z) {
    detail::check_guard(z);
    cld zl(z.real(), z.imag());
    long double sign = 1.0L;
    if (zl.real() < 0.0L) { // J1 is odd
        zl = -zl;
        sign = -1.0L;
    }
    if (std::abs(z) <= detail::series_radius) return cplx(sign * detail::j1_series(zl));
    return cplx(sign * detail::miller_j01(zl).j1);
}

namespace detail {

/// H0^(2), H1^(2) as long-double pairs (value form), all regions.
struct H01 {
    cld h0, h1;
};

inline H01 hankel01_2(cld z) {
    if (std::abs(z) <= series_radius) {
        const cld i(0.0L, 1.0L);
        return {j0_series(z) - i * y0_series(z), j1_series(z) - i * y1_series(z)};
    }
    if (z.imag() <= 0.0L) {
        const auto s = hankel01_2_scaled_integral(z);
        const cld e = std::exp(cld(0.0L, -1.0L) * z);
        return {s.h0_scaled * e, s.h1_scaled * e};
    }
    // upper half-plane (best effort, Re z > 0): H^(2)(z) = conj(H^(1)(conj z))
    // and H^(1) = 2J - H^(2).
    const cld zc = std::conj(z);
    const auto j = miller_j01(zc);
    const auto h = hankel01_2(zc);
    return {std::conj(2.0L * j.j0 - h.h0), std::conj(2.0L * j.j1 - h.h1)};
}

} // namespace detail

/// Bessel function of the second kind, order zero.  Operational domain
/// Re z >= 0 (or |z| <= 8); z = 0 is a logarithmic singularity.
inline cplx y0(cplx z) {
    detail::check_guard(z);
    if (z == cplx(0.0, 0.0)) throw SingularityError("y0: logarithmic singularity at z = 0");
    const cld zl(z.real(), z.imag());
    if (std::abs(z) <= detail::series_radius) return cplx(detail::y0_series(zl));
    if (z.real() < 0.0)
        throw RangeError("y0: Re z < 0 outside the operational domain for |z| > 8");
    if (z.imag() <= 0.0) {
        const cld i(0.0L, 1.0L);
        return cplx(-i * (detail::miller_j01(zl).j0 - detail::hankel01_2(zl).h0));
    }
    return std::conj(y0(std::conj(z)));
}

/// Bessel function of the second kind, order one.
inline cplx y1(cplx z) {
    detail::check_guard(z);
    if (z == cplx(0.0, 0.0)) throw SingularityError("y1: pole at z = 0");
    const cld zl(z.real(), z.imag());
    if (std::abs(z) <= detail::series_radius) return cplx(detail::y1_series(zl));
    if (z.real() < 0.0)
        throw RangeError("y1: Re z < 0 outside the operational domain for |z| > 8");
    if (z.imag() <= 0.0) {
        const cld i(0.0L, 1.0L);
        return cplx(-i * (detail::miller_j01(zl).j1 - detail::hankel01_2(zl).h1));
    }
    return std::conj(y1(std::conj(z)));
}

/// Zeroth-order Hankel function of the second kind, with the e^{+iz}-scaled
/// form used for overflow-safe ratios.
inline HankelValue hankel0_2(cplx z) {
    detail::check_guard(z);
    if (z == cplx(0.0, 0.0))
        throw SingularityError("hankel0_2: Y0 log divergence at z = 0");
    const cld zl(z.real(), z.imag());
    if (std::abs(z) > detail::series_radius && z.imag() <= 0.0) {
        const auto s = detail::hankel01_2_scaled_integral(zl);
        const cld e = std::exp(cld(0.0L, -1.0L) * zl);
        return {cplx(s.h0_scaled * e), cplx(s.h0_scaled)};
    }
    const auto h = detail::hankel01_2(zl);
    const cld e = std::exp(cld(0.0L, 1.0L) * zl);
    return {cplx(h.h0), cplx(h.h0 * e)};
}

/// First-order Hankel function of the second kind (Wronskian/derivative use).
inline HankelValue hankel1_2(cplx z) {
    detail::check_guard(z);
    if (z == cplx(0.0, 0.0)) throw SingularityError("hankel1_2: pole at z = 0");
    const cld zl(z.real(), z.imag());
    if (std::abs(z) > detail::series_radius && z.imag() <= 0.0) {
        const auto s = detail::hankel01_2_scaled_integral(zl);
        const cld e = std::exp(cld(0.0L, -1.0L) * zl);
        return {cplx(s.h1_scaled * e), cplx(s.h1_scaled)};
    }
    const auto h = detail::hankel01_2(zl);
    const cld e = std::exp(cld(0.0L, 1.0L) * zl);
    return {cplx(h.h1), cplx(h.h1 * e)};
}

/// H0^(2)(z_num) / H0^(2)(z_den) through the scaled forms, finite even when
/// both unscaled values underflow (strong attenuation).
inline cplx hankel_ratio(cplx z_num, cplx z_den) {
    if (z_num == cplx(0.0, 0.0) || z_den == cplx(0.0, 0.0))
        throw SingularityError("hankel_ratio: zero argument");
    const HankelValue n = hankel0_2(z_num);
    const HankelValue d = hankel0_2(z_den);
    const cplx i(0.0, 1.0);
    return std::exp(-i * (z_num - z_den)) * (n.scaled / d.scaled);
}

namespace detail {

// Exposed for the regime-agreement tests in the series/asymptotic band.
inline cplx hankel0_2_series_path(cplx z) {
    const cld zl(z.real(), z.imag());
    const cld i(0.0L, 1.0L);
    return cplx(j0_series(zl) - i * y0_series(zl));
}

inline cplx hankel0_2_integral_path(cplx z) {
    const cld zl(z.real(), z.imag());
    const auto s = hankel01_2_scaled_integral(zl);
    return cplx(s.h0_scaled * std::exp(cld(0.0L, -1.0L) * zl));
}

} // namespace detail

} // namespace efwave::specfun
