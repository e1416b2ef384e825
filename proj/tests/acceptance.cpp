// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "efwave/efwave.hpp"

using namespace efwave;

namespace {

int failures = 0;

void report(int n, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", n, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

double rel_l2(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    const std::size_t n = std::min(got.size(), want.size());
    for (std::size_t i = 0; i < n; ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / den);
}

double rel_linf(const std::vector<double>& got, const std::vector<double>& want) {
    double num = 0.0, den = 0.0;
    const std::size_t n = std::min(got.size(), want.size());
    for (std::size_t i = 0; i < n; ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / den;
}

double peak(const std::vector<double>& v) {
    double p = 0.0;
    for (double x : v) p = std::max(p, std::abs(x));
    return p;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- criterion runners ------------------------------------------------

// shared artifacts for the determinism re-run
std::string csv1, csv2, csv3, csv4;

void criterion_1(bool rerun) {
    const double t_start = now_s();
    const EquivalentFluid l = lossless_limit(builtin_mat1());
    const double fc = 700.0, c = l.c_inf(), x1 = 1.0;
    const ExcitationSpec spec(fc);
    const SampledSignal exc = sample(spec, 64.0 * fc, 1.0 / fc + 1.5 * x1 / c);
    const FieldResult r = solve(l, {1, 0.0, {x1}}, exc, 8);
    if (rerun) {
        if (to_csv(r) != csv1) report(10, "determinism", false, "criterion 1 CSV differs");
        return;
    }
    csv1 = to_csv(r);
    std::vector<double> oracle(exc.size());
    for (std::size_t i = 0; i < exc.size(); ++i)
        oracle[i] = p0(spec, exc.time_at(i) - x1 / c);
    const double err = rel_linf(r.per_receiver[0].samples, oracle);
    const double dt_run = now_s() - t_start;
    report(1, "lossless 1D translation oracle", err < 1e-3 && dt_run < 1.0,
           "rel Linf " + fmt(err) + " (tol 1e-3), " + fmt(dt_run) + " s");
}

void criterion_2(bool rerun) {
    const double t_start = now_s();
    const EquivalentFluid m = builtin_mat1();
    const double fc = 700.0, c = m.c_inf(), L = 10.0, dur = 0.025;
    const std::vector<double> receivers{0.1, 0.25, 0.5};
    std::vector<double> worst_per_fac;
    for (int fac : {1, 2, 4}) {
        const double dx = c / (40.0 * fc * fac);
        const auto nx = static_cast<std::size_t>(std::ceil(L / dx)) + 1;
        const double dt = 0.5 * dx / c;
        const auto nt = static_cast<std::size_t>(std::ceil(dur / dt));
        tdfd::SimConfig cfg(m, L, nx, dt, nt, receivers);
        const SampledSignal exc = sample(ExcitationSpec(fc), 1.0 / dt, dur);
        const FieldResult td = tdfd::run(cfg, exc);
        const FieldResult an = solve(m, {1, 0.0, td.geometry.receivers}, exc, 8);
        if (fac == 1) {
            if (rerun) {
                if (to_csv(td) != csv2) report(10, "determinism", false, "criterion 2 CSV differs");
                return;
            }
            csv2 = to_csv(td);
        }
        double worst = 0.0;
        for (std::size_t j = 0; j < receivers.size(); ++j)
            worst = std::max(worst,
                             rel_l2(td.per_receiver[j].samples, an.per_receiver[j].samples));
        worst_per_fac.push_back(worst);
    }
    const double dt_run = now_s() - t_start;
    const bool pass = worst_per_fac[0] < 0.02 && worst_per_fac[1] < worst_per_fac[0] &&
                      worst_per_fac[2] < worst_per_fac[1] && dt_run < 60.0;
    report(2, "1D TDFD cross-validation", pass,
           "rel L2 " + fmt(worst_per_fac[0]) + " -> " + fmt(worst_per_fac[1]) + " -> " +
               fmt(worst_per_fac[2]) + " (tol 0.02, monotone), " + fmt(dt_run) + " s");
}

void criterion_3(bool rerun) {
    const double t_start = now_s();
    const EquivalentFluid m = builtin_mat1();
    const double fc = 700.0, r0 = 0.1;
    const SampledSignal exc =
        sample(ExcitationSpec(fc), 64.0 * fc, 1.0 / fc + 1.5 * 0.5 / m.c_inf());
    const FieldResult f3 = solve(m, {3, r0, {0.2, 0.5}}, exc, 8);
    const FieldResult f1 = solve(m, {1, 0.0, {0.1, 0.4}}, exc, 8);
    if (rerun) {
        if (to_csv(f3) != csv3) report(10, "determinism", false, "criterion 3 CSV differs");
        return;
    }
    csv3 = to_csv(f3);
    double worst = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<double> rescaled = f3.per_receiver[j].samples;
        for (double& v : rescaled) v *= f3.geometry.receivers[j] / r0;
        worst = std::max(worst, rel_linf(rescaled, f1.per_receiver[j].samples));
    }
    const double dt_run = now_s() - t_start;
    report(3, "3D/1D construction identity", worst < 1e-12 && dt_run < 1.0,
           "rel Linf " + fmt(worst) + " (tol 1e-12), " + fmt(dt_run) + " s");
}

void criterion_4(bool rerun) {
    const double t_start = now_s();
    // asymptotic regime: k r0 = 2 pi 2000 / c ~ 36.7 > 20 at r0 = 1 m
    const double fc = 2000.0, r0 = 1.0;
    const EquivalentFluid m = builtin_mat1();
    const EquivalentFluid l = lossless_limit(m);
    const SampledSignal exc =
        sample(ExcitationSpec(fc), 64.0 * fc, 1.0 / fc + 1.5 * 3.0 / l.c_inf());
    const FieldResult bound = solve(m, {2, r0, {r0}}, exc, 8);
    const FieldResult spread = solve(l, {2, r0, {1.0, 4.0}}, exc, 8);
    if (rerun) {
        if (to_csv(spread) != csv4) report(10, "determinism", false, "criterion 4 CSV differs");
        return;
    }
    csv4 = to_csv(spread);
    const double err_bound = rel_linf(bound.per_receiver[0].samples, exc.samples);
    const double ratio = peak(spread.per_receiver[0].samples) /
                         peak(spread.per_receiver[1].samples);
    const double ratio_err = std::abs(ratio - 2.0) / 2.0;
    const double dt_run = now_s() - t_start;
    report(4, "2D boundary and spreading", err_bound < 1e-6 && ratio_err < 0.03 && dt_run < 5.0,
           "boundary rel Linf " + fmt(err_bound) + " (tol 1e-6), peak ratio " + fmt(ratio) +
               " vs 2 (tol 3%), " + fmt(dt_run) + " s");
}

void criterion_5() {
    // Wronskian in the stable outgoing form i (J1 H0 - J0 H1) = 2/(pi z);
    // the raw J/Y form is not evaluable in double at large |Im z|
    double worst_w = 0.0;
    for (int ir = 0; ir <= 27; ++ir) {
        const double r = 0.1 * std::pow(500.0, ir / 27.0);
        for (int ia = 0; ia <= 12; ++ia) {
            const cplx z = std::polar(r, -0.5 * std::numbers::pi * ia / 12.0);
            const cplx w =
                cplx(0.0, 1.0) * (specfun::j1(z) * specfun::hankel0_2(z).value -
                                  specfun::j0(z) * specfun::hankel1_2(z).value);
            const cplx want = 2.0 / (std::numbers::pi * z);
            worst_w = std::max(worst_w, std::abs(w - want) / std::abs(want));
        }
    }
    double worst_band = 0.0;
    for (double r : {7.5, 7.75, 8.0, 8.25, 8.5})
        for (int ia = 0; ia <= 8; ++ia) {
            const cplx z = std::polar(r, -0.5 * std::numbers::pi * ia / 8.0);
            const cplx a = specfun::detail::hankel0_2_series_path(z);
            const cplx b = specfun::detail::hankel0_2_integral_path(z);
            worst_band = std::max(worst_band, std::abs(a - b) / std::abs(b));
        }
    report(5, "special-function accuracy", worst_w < 1e-9 && worst_band < 1e-9,
           "Wronskian " + fmt(worst_w) + ", switchover band " + fmt(worst_band) +
               " (tol 1e-9)");
}

void criterion_6() {
    // Table arithmetic carried at full precision: C(0) = C_inf + sum A/alpha,
    // v(0) likewise, c_inf = sqrt(v_inf/C_inf). The commonly quoted 5-digit
    // rounding of v(0) is 0.065252; the exact sum is 0.0652511688..., and the
    // 1e-6 relative check is against the exact arithmetic, not the rounding.
    const EquivalentFluid m = builtin_mat1();
    const double c0 = m.compressibility.value(0.0).real();
    const double v0 = m.specific_volume.value(0.0).real();
    const double ci = m.c_inf();
    const double e1 = std::abs(c0 / 1.0806016721960128e-5 - 1.0);
    const double e2 = std::abs(v0 / 0.06525116885968674 - 1.0);
    const double e3 = std::abs(ci / 342.3766692128594 - 1.0);
    const double worst = std::max({e1, e2, e3});
    report(6, "material table fidelity", worst < 1e-6,
           "worst rel err " + fmt(worst) + " (tol 1e-6)");
}

void criterion_7() {
    const bool pass = default_derivative_sum_numerator(1) == 0 &&
                      default_derivative_sum_numerator(3) == 0 &&
                      default_derivative_sum_numerator(5) == 0 &&
                      default_derivative_sum_numerator(7) == -2835 * 1536;
    report(7, "excitation smoothness sums", pass,
           "orders 1,3,5 = 0; order 7 = -2835 (exact integers)");
}

void criterion_8() {
    const EquivalentFluid m = builtin_mat1();
    const EquivalentFluid l = lossless_limit(m);
    const double fc = 700.0, c = l.c_inf(), x1 = 1.0;
    const SampledSignal exc = sample(ExcitationSpec(fc), 64.0 * fc, 1.0 / fc + 1.5 * x1 / c);
    double worst_residue = 0.0;
    for (const EquivalentFluid* mat : {&m, &l}) {
        const FieldResult r = solve(*mat, {1, 0.0, {0.25, x1}}, exc, 8);
        worst_residue = std::max(worst_residue, r.diagnostics.imag_residue);
    }
    const FieldResult r = solve(l, {1, 0.0, {x1}}, exc, 8);
    const auto& y = r.per_receiver[0].samples;
    double pre = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (exc.time_at(i) < x1 / c - 1e-4) pre = std::max(pre, std::abs(y[i]));
    const double pre_frac = pre / peak(y);
    report(8, "realness and causality", worst_residue < 1e-10 && pre_frac < 1e-6,
           "imag residue " + fmt(worst_residue) + " (tol 1e-10), pre-arrival " +
               fmt(pre_frac) + " (tol 1e-6)");
}

void criterion_9() {
    const double a = 1000.0, fs = 1e6;
    const std::size_t n = 1 << 16;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(-a * static_cast<double>(i) / fs);
    const Spectrum s = forward({fs, 0.0, std::move(x)});
    double worst = 0.0;
    for (std::size_t i = 1; i < s.n / 2; ++i) {
        const double w = s.omega_at(i);
        if (w < 50.0 || w > 200.0) continue;
        const cplx expected = 1.0 / cplx(a, w);
        worst = std::max(worst, std::abs(s.bins[i] - expected) / std::abs(expected));
    }
    report(9, "spectral convention pin", worst < 1e-3,
           "worst rel err " + fmt(worst) + " vs 1/(a+iw) (tol 1e-3)");
}

void criterion_10() {
    // re-run the criterion 1-4 pipelines; any CSV mismatch reports a FAIL
    // line from inside the runner
    const int before = failures;
    criterion_1(true);
    criterion_2(true);
    criterion_3(true);
    criterion_4(true);
    if (failures == before)
        report(10, "determinism", true, "criteria 1-4 CSVs byte-identical on re-run");
}

} // namespace

int main() {
    criterion_1(false);
    criterion_2(false);
    criterion_3(false);
    criterion_4(false);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("%s (%d/10 criteria)\n", failures == 0 ? "ALL PASS" : "FAILURES", 10 - failures);
    return failures == 0 ? 0 : 1;
}
