#include <catch_amalgamated.hpp>

#include <cmath>

#include "efwave/analytic.hpp"
#include "efwave/excitation.hpp"
#include "efwave/tdfd.hpp"

using namespace efwave;
using Catch::Matchers::WithinRel;

namespace {

double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    const std::size_t n = std::min(got.size(), want.size());
    for (std::size_t i = 0; i < n; ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / den);
}

/// Passive resonant material with one conjugate pole pair in C(w); the phase
/// velocity stays below c_inf over the whole axis.
EquivalentFluid pair_material() {
    EquivalentFluid m;
    m.name = "pair-test";
    m.compressibility = RationalFRF(6.5866e-6, {}, {{0.08, 0.02, 20000.0, 8000.0}});
    m.specific_volume = RationalFRF(0.772093, {}, {});
    return m;
}

} // namespace

TEST_CASE("kernel derivation mirrors the pole-residue data") {
    const EquivalentFluid m = builtin_mat1();
    const tdfd::KernelSet k = tdfd::derive_kernels(m.specific_volume);
    CHECK(k.instantaneous == 0.772093);
    REQUIRE(k.exp_kernels.size() == 2);
    CHECK(k.exp_kernels[0].amplitude == -20397.84);
    CHECK(k.exp_kernels[0].rate == 84764.0);
    CHECK(k.osc_kernels.empty());

    const tdfd::KernelSet kp = tdfd::derive_kernels(pair_material().compressibility);
    REQUIRE(kp.osc_kernels.size() == 1);
    CHECK(kp.osc_kernels[0].b == 0.08);
    CHECK(kp.osc_kernels[0].gamma == 8000.0);
}

TEST_CASE("exponential integrator weights") {
    SECTION("constant forcing is integrated exactly") {
        for (double rate : {37500.0, 84764.0, 5.0}) {
            const double dt = 1.7857e-5;
            const auto w = tdfd::detail::etd2_weights(cplx(rate, 0.0), dt);
            const double exact = (1.0 - std::exp(-rate * dt)) / rate;
            CHECK_THAT((w.w0 + w.w1).real(), WithinRel(exact, 1e-13));
        }
    }
    SECTION("linear forcing matches fine-grained quadrature") {
        const double rate = 37500.0, dt = 2e-5, f0 = 0.3, f1 = -1.1;
        const auto w = tdfd::detail::etd2_weights(cplx(rate, 0.0), dt);
        // m(dt) = int_0^dt e^{-rate (dt-s)} f(s) ds, f linear from f0 to f1
        const std::size_t n = 20000;
        double q = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double s = dt * static_cast<double>(i) / static_cast<double>(n);
            const double f = f0 + (f1 - f0) * s / dt;
            const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
            q += wgt * std::exp(-rate * (dt - s)) * f;
        }
        q *= dt / static_cast<double>(n);
        CHECK_THAT((w.w0 * f0 + w.w1 * f1).real(), WithinRel(q, 1e-7));
    }
    SECTION("series and closed form agree at the switchover") {
        for (double mag : {0.9e-3, 1.1e-3}) {
            const auto w = tdfd::detail::etd2_weights(cplx(mag / 1e-5, 0.0), 1e-5);
            const double x = mag;
            const double E = std::exp(-x);
            // reference in long double to dodge the cancellation
            const long double xl = x;
            const long double w1_ref = 1e-5L * (1.0L - (1.0L - std::exp(-xl)) / xl) / xl;
            CHECK_THAT(w.w1.real(), WithinRel(static_cast<double>(w1_ref), 1e-9));
            CHECK_THAT(w.E.real(), WithinRel(E, 1e-14));
        }
    }
}

TEST_CASE("zero boundary keeps the state bitwise zero") {
    tdfd::SimConfig cfg(builtin_mat1(), 1.0e6, 64, 0.1, 1, {0.0});
    tdfd::Simulation sim(cfg);
    for (int n = 0; n < 10000; ++n) sim.step(0.0);
    for (double v : sim.pressure()) CHECK(v == 0.0);
    CHECK(sim.step_index() == 10000);
}

TEST_CASE("config validation") {
    const EquivalentFluid m = builtin_mat1();
    // CFL violation names the bound
    CHECK_THROWS_WITH(tdfd::SimConfig(m, 8.0, 656, 1e-3, 100, {0.1}),
                      Catch::Matchers::ContainsSubstring("CFL"));
    // domain shorter than the travel distance
    CHECK_THROWS_AS(tdfd::SimConfig(m, 0.5, 41, 1.7e-5, 10000, {0.1}), ValidationError);
    // receiver outside the domain
    CHECK_THROWS_AS(tdfd::SimConfig(m, 8.0, 656, 1.7e-5, 100, {9.0}), ValidationError);
}

TEST_CASE("receivers snap to the nearest node and report back") {
    const EquivalentFluid m = builtin_mat1();
    tdfd::SimConfig cfg(m, 2.0, 165, 1.5e-5, 100, {0.1, 0.25});
    const ExcitationSpec spec(700.0);
    const FieldResult r = tdfd::run(cfg, sample(spec, 1.0 / cfg.dt, 100 * cfg.dt + 1e-2));
    const double dx = cfg.dx();
    for (std::size_t j = 0; j < 2; ++j) {
        const double snapped = std::round(cfg.receivers[j] / dx) * dx;
        CHECK_THAT(r.geometry.receivers[j], WithinRel(snapped, 1e-14));
    }
    CHECK(r.per_receiver[0].size() == 100);
    CHECK(r.per_receiver[0].fs == 1.0 / cfg.dt);
}

TEST_CASE("lossless run converges to the exact delayed pulse") {
    const EquivalentFluid l = lossless_limit(builtin_mat1());
    const double c = l.c_inf(), fc = 700.0, dur = 0.004, L = 2.0;
    const ExcitationSpec spec(fc);
    std::vector<double> errs;
    for (int fac : {1, 2, 4}) {
        const double dx = c / (20.0 * fc * fac);
        const auto nx = static_cast<std::size_t>(std::ceil(L / dx)) + 1;
        const double dt = 0.5 * dx / c;
        const auto nt = static_cast<std::size_t>(std::ceil(dur / dt));
        tdfd::SimConfig cfg(l, L, nx, dt, nt, {0.5});
        const FieldResult r = tdfd::run(cfg, sample(spec, 1.0 / dt, dur));
        const double x = r.geometry.receivers[0];
        std::vector<double> exact(nt);
        for (std::size_t i = 0; i < nt; ++i)
            exact[i] = p0(spec, static_cast<double>(i) * dt - x / c);
        errs.push_back(rel_l2(r.per_receiver[0].samples, exact));
    }
    CHECK(errs[0] < 0.05);
    CHECK(errs[1] < errs[0]);
    CHECK(errs[2] < errs[1]);
    // leapfrog time error dominates at fixed CFL: halving dx quarters the error
    const double ratio = errs[1] / errs[2];
    CHECK(ratio > 2.5);
    CHECK(ratio < 6.5);
}

TEST_CASE("truncated far boundary stays quiet") {
    const EquivalentFluid m = builtin_mat1();
    const double c = m.c_inf(), fc = 700.0, dur = 0.004, L = 2.0;
    const double dx = c / (40.0 * fc);
    const auto nx = static_cast<std::size_t>(std::ceil(L / dx)) + 1;
    const double dt = 0.5 * dx / c;
    const auto nt = static_cast<std::size_t>(std::ceil(dur / dt));
    tdfd::SimConfig cfg(m, L, nx, dt, nt, {0.25});
    const FieldResult r = tdfd::run(cfg, sample(ExcitationSpec(fc), 1.0 / dt, dur));
    CHECK(r.diagnostics.tail_peak_ratio < 1e-12);
    CHECK(r.diagnostics.warnings.empty());
}

TEST_CASE("complex-pair material cross-checks against the analytic solve") {
    const EquivalentFluid m = pair_material();
    const double c = m.c_inf(), fc = 700.0, dur = 0.004, L = 2.0;
    const double dx = c / (40.0 * fc);
    const auto nx = static_cast<std::size_t>(std::ceil(L / dx)) + 1;
    const double dt = 0.5 * dx / c;
    const auto nt = static_cast<std::size_t>(std::ceil(dur / dt));
    tdfd::SimConfig cfg(m, L, nx, dt, nt, {0.25});
    const SampledSignal exc = sample(ExcitationSpec(fc), 1.0 / dt, dur);
    const FieldResult td = tdfd::run(cfg, exc);
    // analytic at the snapped receiver coordinate, on the solver clock
    const FieldResult an = solve(m, {1, 0.0, {td.geometry.receivers[0]}}, exc);
    CHECK(rel_l2(td.per_receiver[0].samples, an.per_receiver[0].samples) < 0.01);
}
