#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "efwave/analytic.hpp" // FieldResult, Diagnostics
#include "efwave/dispersion.hpp"
#include "efwave/material.hpp"
#include "efwave/signal.hpp"

// Independent 1D time-domain solver of the convolution wave equation, used to
// cross-validate the frequency-domain solution. First-order velocity-pressure
// staggered leapfrog with one memory variable per pole (recursive
// convolution): eliminating u in the frequency domain recovers
// -w^2 C(w) p = d/dx ( v(w) dp/dx ).
//
// Memory ODEs are integrated exactly with the forcing taken piecewise linear
// across the step (exponential integrator, second order, unconditionally
// stable for the memory subsystem; exact for frozen forcing). Spatial
// derivatives use the 4th-order staggered stencil so the leapfrog time error
// dominates.

namespace efwave::tdfd {

/// Causal kernel A e^{-alpha t} H(t) (inverse transform of A/(alpha - i w)).
struct ExpKernel {
    double amplitude;
    double rate;
};

/// Causal kernel e^{-beta t} (b cos(gamma t) + c sin(gamma t)) H(t)
/// (inverse transform of one conjugate pole pair).
struct OscKernel {
    double b, c, beta, gamma;
};

struct KernelSet {
    double instantaneous = 0.0; ///< constant (delta) term
    std::vector<ExpKernel> exp_kernels;
    std::vector<OscKernel> osc_kernels;
};

/// Time-domain kernels behind a pole-residue model.
inline KernelSet derive_kernels(const RationalFRF& model) {
    KernelSet k;
    k.instantaneous = model.constant();
    for (const auto& p : model.real_poles()) k.exp_kernels.push_back({p.residue, p.pole});
    for (const auto& p : model.complex_pairs()) k.osc_kernels.push_back({p.b, p.c, p.beta, p.gamma});
    return k;
}

namespace detail {

/// Exponential-integrator update weights for dm/dt = -lambda m + f with f
/// piecewise linear: m(t+dt) = E m(t) + w0 f(t) + w1 f(t+dt).
struct Etd2 {
    cplx E, w0, w1;
};

inline Etd2 etd2_weights(cplx lambda, double dt) {
    const cplx x = lambda * dt;
    const cplx E = std::exp(-x);
    if (std::abs(x) < 1e-3) {
        // series in x = lambda dt; coefficients (-1)^{k+1} k/(k+1)! and
        // (-1)^{k+1}/(k+1)! from the closed forms below
        const cplx w0 = dt * (0.5 - x * (1.0 / 3.0) + x * x * (1.0 / 8.0) -
                              x * x * x * (1.0 / 30.0) + x * x * x * x * (1.0 / 144.0));
        const cplx w1 = dt * (0.5 - x * (1.0 / 6.0) + x * x * (1.0 / 24.0) -
                              x * x * x * (1.0 / 120.0) + x * x * x * x * (1.0 / 720.0));
        return {E, w0, w1};
    }
    const cplx one_m_E_over_x = (1.0 - E) / x;
    return {E, (one_m_E_over_x - E) / lambda, (1.0 - one_m_E_over_x) / lambda};
}

/// Per-kernel state attached to one field array (faces or cells).
struct RealMemory {
    double E, w0, w1;        ///< amplitude folded into w0/w1
    std::vector<double> m;
};

struct PairMemory {
    cplx E, w0, w1;          ///< weights for the unit-residue complex state
    cplx readout;            ///< b + i c
    std::vector<cplx> z;
};

} // namespace detail

struct SimConfig {
    EquivalentFluid mat;
    double L = 0.0;       ///< domain length, m
    std::size_t nx = 0;   ///< pressure nodes (spacing dx = L/(nx-1))
    double dt = 0.0;      ///< time step, s
    std::size_t nt = 0;   ///< steps
    double cfl = 0.0;     ///< Courant number actually used (diagnostic)
    std::vector<double> receivers;

    static constexpr double cfl_max = 0.9;

    SimConfig(EquivalentFluid material, double length, std::size_t nx_, double dt_,
              std::size_t nt_, std::vector<double> receivers_)
        : mat(std::move(material)), L(length), nx(nx_), dt(dt_), nt(nt_),
          receivers(std::move(receivers_)) {
        if (nx < 8) throw ValidationError("tdfd: nx too small");
        if (!(L > 0.0) || !(dt > 0.0) || nt == 0)
            throw ValidationError("tdfd: L, dt, nt must be positive");
        const double c = mat.c_inf();
        const double h = dx();
        cfl = c * dt / h;
        if (cfl > cfl_max)
            throw ValidationError("tdfd: dt violates the CFL bound dt <= " +
                                  std::to_string(cfl_max) + "*dx/c_inf = " +
                                  std::to_string(cfl_max * h / c) + " s");
        // domain truncation: nothing may reach the far end
        if (!(L > c * static_cast<double>(nt) * dt + 10.0 * h))
            throw ValidationError("tdfd: domain too short, need L > c_inf*nt*dt + margin");
        for (double r : receivers)
            if (r < 0.0 || r > L) throw ValidationError("tdfd: receiver outside domain");
        // c_inf must be the stiffest speed for the CFL bound to be safe
        if (mat.dispersive()) {
            const double w_max = std::numbers::pi / dt;
            for (int i = 0; i <= 200; ++i) {
                const double w = std::exp(std::log(1.0) + (std::log(w_max) - std::log(1.0)) *
                                                              static_cast<double>(i) / 200.0);
                const cplx k = wavenumber(mat, w);
                if (k.real() > 0.0 && w / k.real() > c * (1.0 + 1e-9))
                    throw ValidationError(
                        "tdfd: phase velocity exceeds c_inf at omega = " + std::to_string(w) +
                        "; CFL bound based on c_inf is not safe for this material");
            }
        }
    }

    double dx() const { return L / static_cast<double>(nx - 1); }
};

class Simulation {
public:
    explicit Simulation(SimConfig config) : cfg_(std::move(config)) {
        const std::size_t nx = cfg_.nx;
        p_.assign(nx, 0.0);
        u_.assign(nx - 1, 0.0);
        grad_prev_.assign(nx - 1, 0.0);
        pdot_prev_.assign(nx, 0.0);
        g_.assign(nx - 1, 0.0);
        divu_.assign(nx, 0.0);

        const KernelSet kv = derive_kernels(cfg_.mat.specific_volume);
        const KernelSet kc = derive_kernels(cfg_.mat.compressibility);
        v_inf_ = kv.instantaneous;
        c_inf_coef_ = kc.instantaneous;
        for (const auto& k : kv.exp_kernels) mem_v_.push_back(make_real(k, nx - 1));
        for (const auto& k : kv.osc_kernels) mem_v_pair_.push_back(make_pair(k, nx - 1));
        for (const auto& k : kc.exp_kernels) mem_c_.push_back(make_real(k, nx));
        for (const auto& k : kc.osc_kernels) mem_c_pair_.push_back(make_pair(k, nx));

        c_eff_ = c_inf_coef_;
        for (const auto& m : mem_c_) c_eff_ += m.w1;
        for (const auto& m : mem_c_pair_) c_eff_ += (m.readout * m.w1).real();
    }

    const SimConfig& config() const { return cfg_; }
    std::size_t step_index() const { return step_; }
    const std::vector<double>& pressure() const { return p_; }

    /// Advance one step: impose p(0) = boundary_value at the current time,
    /// then update memory, flux, and pressure.
    void step(double boundary_value) {
        apply_boundary(boundary_value);
        advance();
    }

    void apply_boundary(double boundary_value) { p_[0] = boundary_value; }

    void advance() {
        const std::size_t nx = cfg_.nx;
        const double dt = cfg_.dt;
        const double dx = cfg_.dx();

        gradient(p_, g_, dx);

        // face memory (specific volume), then flux update with RHS at t_n
        for (auto& m : mem_v_)
            for (std::size_t i = 0; i < m.m.size(); ++i)
                m.m[i] = m.E * m.m[i] + m.w0 * grad_prev_[i] + m.w1 * g_[i];
        for (auto& m : mem_v_pair_)
            for (std::size_t i = 0; i < m.z.size(); ++i)
                m.z[i] = m.E * m.z[i] + m.w0 * grad_prev_[i] + m.w1 * g_[i];
        for (std::size_t i = 0; i < nx - 1; ++i) {
            double rhs = v_inf_ * g_[i];
            for (const auto& m : mem_v_) rhs += m.m[i];
            for (const auto& m : mem_v_pair_) rhs += (m.readout * m.z[i]).real();
            u_[i] -= dt * rhs;
        }
        grad_prev_.swap(g_);

        divergence(u_, divu_, dx);

        // scalar per-cell solve for pdot at t_{n+1/2}
        for (std::size_t i = 0; i < nx; ++i) {
            double known = divu_[i];
            for (const auto& m : mem_c_) known += m.E * m.m[i] + m.w0 * pdot_prev_[i];
            for (const auto& m : mem_c_pair_)
                known += (m.readout * (m.E * m.z[i] + m.w0 * pdot_prev_[i])).real();
            divu_[i] = -known / c_eff_; // reuse buffer as pdot
        }
        std::vector<double>& pdot = divu_;
        pdot[0] = 0.0; // boundary node is prescribed
        pdot[nx - 1] = 0.0;

        for (auto& m : mem_c_)
            for (std::size_t i = 0; i < nx; ++i)
                m.m[i] = m.E * m.m[i] + m.w0 * pdot_prev_[i] + m.w1 * pdot[i];
        for (auto& m : mem_c_pair_)
            for (std::size_t i = 0; i < nx; ++i)
                m.z[i] = m.E * m.z[i] + m.w0 * pdot_prev_[i] + m.w1 * pdot[i];

        for (std::size_t i = 0; i < nx; ++i) p_[i] += dt * pdot[i];
        pdot_prev_.swap(pdot);
        ++step_;
    }

private:
    detail::RealMemory make_real(const ExpKernel& k, std::size_t n) const {
        const auto w = detail::etd2_weights(cplx(k.rate, 0.0), cfg_.dt);
        return {w.E.real(), k.amplitude * w.w0.real(), k.amplitude * w.w1.real(),
                std::vector<double>(n, 0.0)};
    }
    detail::PairMemory make_pair(const OscKernel& k, std::size_t n) const {
        const auto w = detail::etd2_weights(cplx(k.beta, k.gamma), cfg_.dt);
        return {w.E, w.w0, w.w1, cplx(k.b, k.c), std::vector<cplx>(n, cplx(0.0, 0.0))};
    }

    SimConfig cfg_;
    std::vector<double> p_, u_, grad_prev_, pdot_prev_, g_, divu_;
    double v_inf_ = 0.0, c_inf_coef_ = 0.0, c_eff_ = 0.0;
    std::vector<detail::RealMemory> mem_v_, mem_c_;
    std::vector<detail::PairMemory> mem_v_pair_, mem_c_pair_;
    std::size_t step_ = 0;

    /// 4th-order staggered gradient at faces (2nd-order at the end faces).
    static void gradient(const std::vector<double>& p, std::vector<double>& g, double dx) {
        const std::size_t nf = g.size();
        g[0] = (p[1] - p[0]) / dx;
        g[nf - 1] = (p[nf] - p[nf - 1]) / dx;
        for (std::size_t i = 1; i + 1 < nf; ++i)
            g[i] = (27.0 * (p[i + 1] - p[i]) - (p[i + 2] - p[i - 1])) / (24.0 * dx);
    }

    /// 4th-order staggered divergence at interior cells; boundary cells are
    /// prescribed (left) or held at zero (truncated far end).
    static void divergence(const std::vector<double>& u, std::vector<double>& d, double dx) {
        const std::size_t nx = d.size();
        d[0] = 0.0;
        d[nx - 1] = 0.0;
        d[1] = (u[1] - u[0]) / dx;
        d[nx - 2] = (u[nx - 2] - u[nx - 3]) / dx;
        for (std::size_t i = 2; i + 2 < nx; ++i)
            d[i] = (27.0 * (u[i] - u[i - 1]) - (u[i + 1] - u[i - 2])) / (24.0 * dx);
    }
};

/// Run a full simulation driven by a sampled boundary pressure.  The boundary
/// signal is linearly interpolated onto the solver clock (zero outside its
/// sampled range).  Receivers snap to the nearest pressure node; the snapped
/// coordinates are reported back in the result geometry.
inline FieldResult run(const SimConfig& config, const SampledSignal& boundary) {
    Simulation sim(config);
    const double dt = config.dt;
    const double dx = config.dx();

    std::vector<std::size_t> recv_idx;
    Geometry geom;
    geom.dim = 1;
    for (double r : config.receivers) {
        auto idx = static_cast<std::size_t>(std::llround(r / dx));
        if (idx >= config.nx) idx = config.nx - 1;
        recv_idx.push_back(idx);
        geom.receivers.push_back(static_cast<double>(idx) * dx);
    }

    const auto boundary_at = [&boundary](double t) -> double {
        const double s = (t - boundary.t0) * boundary.fs;
        if (s <= 0.0) return (s == 0.0) ? boundary.samples.front() : 0.0;
        const auto j = static_cast<std::size_t>(s);
        if (j + 1 >= boundary.size()) return 0.0;
        const double frac = s - static_cast<double>(j);
        return boundary.samples[j] * (1.0 - frac) + boundary.samples[j + 1] * frac;
    };

    FieldResult res;
    res.geometry = geom;
    res.material = config.mat.name;
    res.diagnostics.cfl = config.cfl;
    for (std::size_t r = 0; r < recv_idx.size(); ++r)
        res.per_receiver.emplace_back(1.0 / dt, 0.0, std::vector<double>(config.nt, 0.0));

    double peak = 0.0, tail_peak = 0.0;
    const std::size_t tail_begin = (config.nx > 10) ? config.nx - 10 : 0;
    for (std::size_t n = 0; n < config.nt; ++n) {
        sim.apply_boundary(boundary_at(static_cast<double>(n) * dt));
        const auto& p = sim.pressure();
        for (std::size_t r = 0; r < recv_idx.size(); ++r)
            res.per_receiver[r].samples[n] = p[recv_idx[r]];
        for (std::size_t i = 0; i < config.nx; ++i) {
            const double a = std::abs(p[i]);
            peak = std::max(peak, a);
            if (i >= tail_begin) tail_peak = std::max(tail_peak, a);
        }
        if (n % 128 == 0 && !std::isfinite(p[config.nx / 2]))
            throw InstabilityError("tdfd: non-finite field at step " + std::to_string(n));
        sim.advance();
    }
    if (!std::isfinite(sim.pressure()[config.nx / 2]))
        throw InstabilityError("tdfd: non-finite field at step " + std::to_string(config.nt));

    res.diagnostics.tail_peak_ratio = (peak > 0.0) ? tail_peak / peak : 0.0;
    if (res.diagnostics.tail_peak_ratio > 1e-9)
        res.diagnostics.warnings.push_back(
            "tdfd: wavefront reached the truncated far boundary; extend the domain");
    return res;
}

} // namespace efwave::tdfd
