#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "efwave/dispersion.hpp"
#include "efwave/specfun.hpp"
#include "efwave/spectral.hpp"

namespace efwave {

/// Radially symmetric benchmark geometry. In 1D the boundary sits at x0 = 0
/// and receivers are coordinates x >= 0; in 2D/3D r0 is the hole radius and
/// receivers are radii r >= r0.
struct Geometry {
    int dim = 1;
    double r0 = 0.0;
    std::vector<double> receivers;

    void validate() const {
        if (dim < 1 || dim > 3) throw ValidationError("geometry: dim must be 1, 2, or 3");
        if (dim == 1) {
            for (double x : receivers)
                if (x < 0.0) throw ValidationError("geometry: 1D receiver must be >= 0");
        } else {
            if (!(r0 > 0.0)) throw ValidationError("geometry: r0 must be positive in 2D/3D");
            for (double r : receivers)
                if (r < r0) throw ValidationError("geometry: receiver inside hole (r < r0)");
        }
    }
};

struct Diagnostics {
    double imag_residue = 0.0;          ///< worst over receivers
    std::vector<double> wraparound;     ///< tail-energy fraction per receiver
    std::size_t n_fft = 0;
    std::size_t pad_factor = 0;
    double cfl = 0.0;                   ///< tdfd only
    double tail_peak_ratio = 0.0;       ///< tdfd only: far-end spill check
    std::vector<std::string> warnings;
};

struct FieldResult {
    Geometry geometry;
    std::string material;
    std::vector<SampledSignal> per_receiver; ///< shared fs and length
    Diagnostics diagnostics;
};

/// 1D semi-infinite duct transfer: e^{-i k(w) d}. DC limit is 1.
inline cplx transfer_1d(const EquivalentFluid& mat, double d, double omega) {
    if (omega == 0.0) return {1.0, 0.0};
    const cplx i(0.0, 1.0);
    return std::exp(-i * wavenumber(mat, omega) * d);
}

/// 2D disc-with-hole transfer: H0^(2)(k r) / H0^(2)(k r0).
/// DC limit is 1: H0^(2)(z) ~ -(2i/pi) ln z, so the ratio -> 1 as k -> 0.
inline cplx transfer_2d(const EquivalentFluid& mat, double r, double r0, double omega) {
    if (omega == 0.0) return {1.0, 0.0};
    const cplx k = wavenumber(mat, omega);
    return specfun::hankel_ratio(k * r, k * r0);
}

/// 3D spherical-hole transfer: (r0/r) e^{-i k(w) (r - r0)}.
inline cplx transfer_3d(const EquivalentFluid& mat, double r, double r0, double omega) {
    return (r0 / r) * transfer_1d(mat, r - r0, omega);
}

/// Frequency-domain solve: forward transform the excitation, apply the
/// dimension-appropriate transfer per receiver, inverse transform, keep the
/// real part. Receivers share one grid so cross-receiver comparisons are
/// exact; outputs are truncated to the excitation length.
inline FieldResult solve(const EquivalentFluid& mat, const Geometry& geom,
                         const SampledSignal& excitation, std::size_t pad_factor = 8) {
    geom.validate();
    if (excitation.samples.empty()) throw ValidationError("solve: empty excitation");

    const Spectrum spec = forward(excitation, pad_factor);

    FieldResult res;
    res.geometry = geom;
    res.material = mat.name;
    res.diagnostics.n_fft = spec.n;
    res.diagnostics.pad_factor = pad_factor;

    for (double rx : geom.receivers) {
        TransferFn H;
        if (geom.dim == 1)
            H = [&mat, rx](double w) { return transfer_1d(mat, rx, w); };
        else if (geom.dim == 2)
            H = [&mat, rx, &geom](double w) { return transfer_2d(mat, rx, geom.r0, w); };
        else
            H = [&mat, rx, &geom](double w) { return transfer_3d(mat, rx, geom.r0, w); };

        const Spectrum shifted = apply_transfer(spec, H, /*conjugate_fill=*/true);
        const InverseResult inv = inverse_real(shifted);
        res.diagnostics.imag_residue =
            std::max(res.diagnostics.imag_residue, inv.imag_residue);

        // wrap-around estimate: energy in the last 5% of the padded window
        const auto& full = inv.signal.samples;
        const std::size_t tail_start = full.size() - full.size() / 20;
        double e_tail = 0.0, e_tot = 0.0;
        for (std::size_t i = 0; i < full.size(); ++i) {
            e_tot += full[i] * full[i];
            if (i >= tail_start) e_tail += full[i] * full[i];
        }
        const double frac = (e_tot > 0.0) ? e_tail / e_tot : 0.0;
        res.diagnostics.wraparound.push_back(frac);
        if (frac > 1e-6)
            res.diagnostics.warnings.push_back(
                "wrap-around estimate above 1e-6 at receiver " + std::to_string(rx) +
                "; consider a larger pad factor");

        SampledSignal out = inv.signal;
        out.samples.resize(excitation.size());
        res.per_receiver.push_back(std::move(out));
    }
    return res;
}

} // namespace efwave
