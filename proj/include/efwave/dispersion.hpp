#pragma once

#include <cmath>
#include <complex>

#include "efwave/material.hpp"

namespace efwave {

/// Wavenumber and derived quantities at one angular frequency.
struct DispersionSample {
    double omega = 0.0;          ///< rad/s
    cplx k;                      ///< rad/m, decay branch
    double phase_velocity = 0.0; ///< omega / Re(k), m/s
    double group_velocity = 0.0; ///< 1 / Re(dk/dw), m/s
    double attenuation = 0.0;    ///< -Im(k), 1/m
};

namespace detail {

/// C(w)/v(w) on the spectral (e^{-iwt}) axis, with singularity guards.
inline cplx admittance_ratio(const EquivalentFluid& mat, double omega) {
    const cplx c = mat.compressibility.value_spectral(omega);
    const cplx v = mat.specific_volume.value_spectral(omega);
    if (std::abs(c) == 0.0)
        throw SingularMaterialError("material: compressibility vanishes at omega");
    if (std::abs(v) == 0.0)
        throw SingularMaterialError("material: specific volume vanishes at omega");
    return c / v;
}

} // namespace detail

/// Complex wavenumber from k^2 = w^2 C(w)/v(w), on the branch where the
/// outgoing factor e^{-ik d} does not grow with distance d > 0.  At lossless
/// points the tie-break is the outgoing root Re(k)*sign(w) >= 0.  k(0) = 0 by
/// continuity.
inline cplx wavenumber(const EquivalentFluid& mat, double omega) {
    if (omega == 0.0) return {0.0, 0.0};
    cplx k = std::sqrt(omega * omega * detail::admittance_ratio(mat, omega));
    if (k.imag() > 0.0) k = -k;
    if (k.imag() == 0.0 && k.real() * (omega > 0 ? 1.0 : -1.0) < 0.0) k = -k;
    return k;
}

/// dk/dw on the branch selected by wavenumber().
inline cplx dk_domega(const EquivalentFluid& mat, double omega) {
    if (omega == 0.0) {
        // k ~ w sqrt(C(0)/v(0)); both values are real at DC
        return std::sqrt(detail::admittance_ratio(mat, 0.0));
    }
    const cplx c = mat.compressibility.value_spectral(omega);
    const cplx v = mat.specific_volume.value_spectral(omega);
    if (std::abs(c) == 0.0 || std::abs(v) == 0.0)
        throw SingularMaterialError("material: singular at omega");
    const cplx dc = mat.compressibility.derivative_spectral(omega);
    const cplx dv = mat.specific_volume.derivative_spectral(omega);
    const cplx ratio = c / v;
    const cplx dratio = (dc * v - c * dv) / (v * v);
    const cplx dq = 2.0 * omega * ratio + omega * omega * dratio; // d(k^2)/dw
    const cplx k = wavenumber(mat, omega);
    return dq / (2.0 * k);
}

inline double phase_velocity(const EquivalentFluid& mat, double omega) {
    if (omega == 0.0) {
        const cplx s = std::sqrt(detail::admittance_ratio(mat, 0.0));
        if (s.real() == 0.0) throw EvanescentError("phase velocity undefined: Re(k) = 0");
        return 1.0 / s.real(); // w -> 0 limit of w/Re(k)
    }
    const cplx k = wavenumber(mat, omega);
    if (k.real() == 0.0) throw EvanescentError("phase velocity undefined: Re(k) = 0");
    return omega / k.real();
}

inline double group_velocity(const EquivalentFluid& mat, double omega) {
    const cplx dk = dk_domega(mat, omega);
    if (dk.real() == 0.0)
        throw DegenerateDispersionError("group velocity undefined: Re(dk/dw) = 0");
    return 1.0 / dk.real();
}

inline DispersionSample dispersion_sample(const EquivalentFluid& mat, double omega) {
    DispersionSample s;
    s.omega = omega;
    s.k = wavenumber(mat, omega);
    s.phase_velocity = phase_velocity(mat, omega);
    s.group_velocity = group_velocity(mat, omega);
    s.attenuation = -s.k.imag();
    return s;
}

} // namespace efwave
