#include <catch_amalgamated.hpp>

#include <numbers>

#include "efwave/analytic.hpp"
#include "efwave/excitation.hpp"

using namespace efwave;

namespace {

SampledSignal default_pulse(double fc, double travel, double c, double fs_mult = 64.0) {
    const ExcitationSpec spec(fc);
    return sample(spec, fs_mult * fc, 1.0 / fc + 1.5 * travel / c);
}

double rel_linf(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / den;
}

} // namespace

TEST_CASE("transfer function values") {
    const EquivalentFluid m = builtin_mat1();
    const double w = 2.0 * std::numbers::pi * 700.0;

    CHECK(transfer_1d(m, 0.0, w) == cplx(1.0, 0.0));
    CHECK(transfer_1d(m, 1.0, 0.0) == cplx(1.0, 0.0));
    CHECK(std::abs(transfer_1d(m, 1.0, w)) < 1.0);
    CHECK(std::abs(transfer_1d(m, 2.0, w) - transfer_1d(m, 1.0, w) * transfer_1d(m, 1.0, w)) <
          1e-14);

    CHECK(std::abs(transfer_2d(m, 0.5, 0.5, w) - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(transfer_2d(m, 1.0, 0.5, w)) < 1.0);

    // 3D is spherical spreading times the 1D factor
    const cplx t3 = transfer_3d(m, 0.4, 0.1, w);
    CHECK(std::abs(t3 - 0.25 * transfer_1d(m, 0.3, w)) < 1e-14 * std::abs(t3));
}

TEST_CASE("boundary reproduction at the source") {
    const EquivalentFluid m = builtin_mat1();
    const SampledSignal x = default_pulse(700.0, 0.0, m.c_inf());
    const FieldResult r1 = solve(m, {1, 0.0, {0.0}}, x);
    CHECK(rel_linf(r1.per_receiver[0].samples, x.samples) < 1e-10);

    const FieldResult r2 = solve(m, {2, 0.5, {0.5}}, x);
    CHECK(rel_linf(r2.per_receiver[0].samples, x.samples) < 1e-6);
}

TEST_CASE("lossless 1D solve is a pure delay") {
    const EquivalentFluid l = lossless_limit(builtin_mat1());
    const double c = l.c_inf(), x1 = 1.0, fc = 700.0;
    const SampledSignal x = default_pulse(fc, x1, c);
    const FieldResult r = solve(l, {1, 0.0, {x1}}, x);
    const ExcitationSpec spec(fc);
    std::vector<double> expected(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        expected[i] = p0(spec, x.time_at(i) - x1 / c);
    CHECK(rel_linf(r.per_receiver[0].samples, expected) < 1e-3);
    CHECK(r.diagnostics.imag_residue < 1e-10);
}

TEST_CASE("causality: nothing before the arrival time") {
    const EquivalentFluid l = lossless_limit(builtin_mat1());
    const double c = l.c_inf(), x1 = 1.0;
    const SampledSignal x = default_pulse(700.0, x1, c);
    const FieldResult r = solve(l, {1, 0.0, {x1}}, x);
    const auto& y = r.per_receiver[0].samples;
    double peak = 0.0, pre = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        peak = std::max(peak, std::abs(y[i]));
        if (x.time_at(i) < x1 / c - 1e-4) pre = std::max(pre, std::abs(y[i]));
    }
    CHECK(pre < 1e-6 * peak);
}

TEST_CASE("dissipative medium: monotone peak decay with distance") {
    const EquivalentFluid m = builtin_mat1();
    const SampledSignal x = default_pulse(700.0, 0.5, m.c_inf());
    const FieldResult r = solve(m, {1, 0.0, {0.1, 0.25, 0.5}}, x);
    double prev = 2.0; // excitation peak is about 1.5
    for (const auto& trace : r.per_receiver) {
        double peak = 0.0;
        for (double v : trace.samples) peak = std::max(peak, std::abs(v));
        CHECK(peak < prev);
        CHECK(peak > 0.0);
        prev = peak;
    }
    CHECK(r.diagnostics.imag_residue < 1e-10);
}

TEST_CASE("3D/1D construction identity") {
    const EquivalentFluid m = builtin_mat1();
    const double r0 = 0.1;
    const SampledSignal x = default_pulse(700.0, 0.5, m.c_inf());
    const FieldResult f3 = solve(m, {3, r0, {0.2, 0.5}}, x);
    const FieldResult f1 = solve(m, {1, 0.0, {0.1, 0.4}}, x);
    for (std::size_t j = 0; j < 2; ++j) {
        const double r = f3.geometry.receivers[j];
        std::vector<double> rescaled = f3.per_receiver[j].samples;
        for (double& v : rescaled) v *= r / r0;
        CHECK(rel_linf(rescaled, f1.per_receiver[j].samples) < 1e-12);
    }
}

TEST_CASE("geometry validation") {
    const EquivalentFluid m = builtin_mat1();
    const SampledSignal x = default_pulse(700.0, 0.0, m.c_inf());
    CHECK_THROWS_AS(solve(m, {2, 0.1, {0.05}}, x), ValidationError);
    CHECK_THROWS_AS(solve(m, {4, 0.1, {0.2}}, x), ValidationError);
    CHECK_THROWS_AS(solve(m, {2, 0.0, {0.2}}, x), ValidationError);
    CHECK_THROWS_AS(solve(m, {1, 0.0, {-0.1}}, x), ValidationError);
}

TEST_CASE("output grid matches the excitation grid") {
    const EquivalentFluid m = builtin_mat1();
    const SampledSignal x = default_pulse(700.0, 0.1, m.c_inf());
    const FieldResult r = solve(m, {1, 0.0, {0.1}}, x);
    REQUIRE(r.per_receiver.size() == 1);
    CHECK(r.per_receiver[0].fs == x.fs);
    CHECK(r.per_receiver[0].size() == x.size());
    CHECK(r.diagnostics.n_fft >= x.size() * 8);
}
