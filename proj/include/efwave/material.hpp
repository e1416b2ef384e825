#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "efwave/errors.hpp"

namespace efwave {

using cplx = std::complex<double>;

struct RealPole {
    double residue = 0.0; ///< A, units quantity-unit/s
    double pole = 0.0;    ///< alpha > 0, 1/s
};

/// One complex-conjugate pole pair, stored once with gamma >= 0.
/// Contributes (1/2) [ (B+iC)/(beta+i gamma - i w) + (B-iC)/(beta-i gamma - i w) ].
struct ComplexPair {
    double b = 0.0;
    double c = 0.0;
    double beta = 0.0;  ///< decay rate > 0, 1/s
    double gamma = 0.0; ///< oscillation rate >= 0, rad/s
};

/// Pole-residue frequency-response model:
///   value(w) = constant + sum_j A_j/(alpha_j - i w) + conjugate-pair terms.
///
/// Immutable after construction; evaluation is a pure function.
class RationalFRF {
public:
    RationalFRF() = default;

    RationalFRF(double constant, std::vector<RealPole> real_poles,
                std::vector<ComplexPair> complex_pairs)
        : constant_(constant), real_poles_(std::move(real_poles)),
          complex_pairs_(std::move(complex_pairs)) {
        for (const auto& p : real_poles_) {
            if (!(p.pole > 0.0)) throw ValidationError("RationalFRF: pole must be positive");
        }
        for (auto& p : complex_pairs_) {
            if (!(p.beta > 0.0)) throw ValidationError("RationalFRF: pole must be positive");
            if (p.gamma < 0.0) { // normalize to the gamma >= 0 representative
                p.gamma = -p.gamma;
                p.c = -p.c;
            }
        }
    }

    double constant() const { return constant_; }
    const std::vector<RealPole>& real_poles() const { return real_poles_; }
    const std::vector<ComplexPair>& complex_pairs() const { return complex_pairs_; }

    /// Evaluate at real angular frequency (rad/s).
    cplx value(double omega) const {
        const cplx iw(0.0, omega);
        cplx v(constant_, 0.0);
        for (const auto& p : real_poles_) v += p.residue / (cplx(p.pole, 0.0) - iw);
        for (const auto& p : complex_pairs_) {
            const cplx num(p.b, p.c);
            const cplx den(p.beta, p.gamma);
            v += 0.5 * (num / (den - iw) + std::conj(num) / (std::conj(den) - iw));
        }
        return v;
    }

    /// d/d(omega) of value(omega).
    cplx derivative(double omega) const {
        const cplx i(0.0, 1.0);
        const cplx iw(0.0, omega);
        cplx d(0.0, 0.0);
        for (const auto& p : real_poles_) {
            const cplx den = cplx(p.pole, 0.0) - iw;
            d += p.residue * i / (den * den);
        }
        for (const auto& p : complex_pairs_) {
            const cplx num(p.b, p.c);
            const cplx d1 = cplx(p.beta, p.gamma) - iw;
            const cplx d2 = cplx(p.beta, -p.gamma) - iw;
            d += 0.5 * (num * i / (d1 * d1) + std::conj(num) * i / (d2 * d2));
        }
        return d;
    }

    // The spectral module's transform uses the kernel e^{-i w t}, under which the
    // causal kernels behind this model read A/(alpha + i w). That is this model
    // evaluated at -w; see spectral.hpp.
    cplx value_spectral(double omega) const { return value(-omega); }
    cplx derivative_spectral(double omega) const { return -derivative(-omega); }

    double residue_abs_sum() const {
        double s = 0.0;
        for (const auto& p : real_poles_) s += std::abs(p.residue);
        for (const auto& p : complex_pairs_) s += std::hypot(p.b, p.c);
        return s;
    }

    bool dispersive() const { return !real_poles_.empty() || !complex_pairs_.empty(); }

private:
    double constant_ = 0.0;
    std::vector<RealPole> real_poles_;
    std::vector<ComplexPair> complex_pairs_;
};

/// A named equivalent-fluid material: compressibility C(w) = 1/K(w) and
/// specific volume v(w) = 1/rho(w).
struct EquivalentFluid {
    std::string name;
    RationalFRF compressibility;
    RationalFRF specific_volume;

    /// High-frequency sound speed sqrt(v_inf / C_inf).
    double c_inf() const {
        return std::sqrt(specific_volume.constant() / compressibility.constant());
    }

    bool dispersive() const {
        return compressibility.dispersive() || specific_volume.dispersive();
    }
};

/// The fictitious strongly damped porous material "mat1".
inline EquivalentFluid builtin_mat1() {
    EquivalentFluid m;
    m.name = "mat1";
    m.compressibility = RationalFRF(6.5866e-6,
                                    {{3.32994e-1, 591390.0}, {1.37113e-1, 37500.0}}, {});
    m.specific_volume = RationalFRF(0.772093,
                                    {{-20397.84, 84764.0}, {-10110.46, 21687.0}}, {});
    return m;
}

/// Drop all pole terms, keeping only the constants. The result is a
/// nondispersive medium with constant sound speed c_inf.
inline EquivalentFluid lossless_limit(const EquivalentFluid& mat) {
    EquivalentFluid m;
    m.name = mat.name.ends_with("-lossless") ? mat.name : mat.name + "-lossless";
    m.compressibility = RationalFRF(mat.compressibility.constant(), {}, {});
    m.specific_volume = RationalFRF(mat.specific_volume.constant(), {}, {});
    return m;
}

EquivalentFluid parse_material(const std::string& text);
std::string serialize_material(const EquivalentFluid& mat);

} // namespace efwave
