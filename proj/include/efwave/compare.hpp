#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "efwave/analytic.hpp"
#include "efwave/signal.hpp"

// Trace comparison for cross-validating the two solvers. The reference trace
// defines the clock: the candidate is resampled onto it (cubic) when the rates
// differ. Error norms are relative to the reference.

namespace efwave {

struct ErrorReport {
    double rel_l2 = 0.0;   ///< ||a - b||_2 / ||a||_2
    double rel_linf = 0.0; ///< max|a - b| / max|a|
    long peak_offset = 0;  ///< argmax(candidate) - argmax(reference), samples
};

namespace detail {

/// Catmull-Rom interpolation at fractional index s, endpoints clamped.
inline double cubic_at(const std::vector<double>& y, double s) {
    const auto n = static_cast<std::ptrdiff_t>(y.size());
    if (s <= 0.0) return y.front();
    if (s >= static_cast<double>(n - 1)) return y.back();
    const auto j = static_cast<std::ptrdiff_t>(s);
    const double t = s - static_cast<double>(j);
    const auto at = [&](std::ptrdiff_t i) { return y[static_cast<std::size_t>(std::clamp(i, std::ptrdiff_t{0}, n - 1))]; };
    const double y0 = at(j - 1), y1 = at(j), y2 = at(j + 1), y3 = at(j + 2);
    const double a0 = -0.5 * y0 + 1.5 * y1 - 1.5 * y2 + 0.5 * y3;
    const double a1 = y0 - 2.5 * y1 + 2.0 * y2 - 0.5 * y3;
    const double a2 = -0.5 * y0 + 0.5 * y2;
    return ((a0 * t + a1) * t + a2) * t + y1;
}

inline std::size_t argmax_abs(const std::vector<double>& y) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (std::abs(y[i]) > std::abs(y[best])) best = i;
    return best;
}

} // namespace detail

/// Resample a signal onto the clock of the reference (same fs, t0, length).
inline SampledSignal resample_to(const SampledSignal& candidate, const SampledSignal& reference) {
    std::vector<double> out(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double t = reference.time_at(i);
        out[i] = detail::cubic_at(candidate.samples, (t - candidate.t0) * candidate.fs);
    }
    return {reference.fs, reference.t0, std::move(out)};
}

/// Error of a candidate trace against a reference trace on the reference
/// clock.  Identical sampling is used as-is; otherwise the candidate is
/// resampled.
inline ErrorReport compare_traces(const SampledSignal& reference, const SampledSignal& candidate) {
    if (reference.samples.empty()) throw ValidationError("compare: empty reference trace");
    const bool same_clock = std::abs(candidate.fs - reference.fs) <= 1e-12 * reference.fs &&
                            std::abs(candidate.t0 - reference.t0) * reference.fs <= 1e-12 &&
                            candidate.size() == reference.size();
    const SampledSignal cand = same_clock ? candidate : resample_to(candidate, reference);

    double num2 = 0.0, den2 = 0.0, numi = 0.0, deni = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double d = cand.samples[i] - reference.samples[i];
        num2 += d * d;
        den2 += reference.samples[i] * reference.samples[i];
        numi = std::max(numi, std::abs(d));
        deni = std::max(deni, std::abs(reference.samples[i]));
    }
    if (den2 == 0.0) throw ValidationError("compare: reference trace is identically zero");
    ErrorReport r;
    r.rel_l2 = std::sqrt(num2 / den2);
    r.rel_linf = numi / deni;
    r.peak_offset = static_cast<long>(detail::argmax_abs(cand.samples)) -
                    static_cast<long>(detail::argmax_abs(reference.samples));
    return r;
}

/// Compare two field results receiver-by-receiver.  Receiver coordinates must
/// match to 1e-9 m and appear in the same order; dimensions must agree.
inline std::vector<ErrorReport> compare_fields(const FieldResult& reference,
                                               const FieldResult& candidate) {
    if (reference.geometry.dim != candidate.geometry.dim)
        throw ValidationError("compare: dimension mismatch");
    const auto& ra = reference.geometry.receivers;
    const auto& rb = candidate.geometry.receivers;
    if (ra.size() != rb.size())
        throw ValidationError("compare: receiver count mismatch");
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (std::abs(ra[i] - rb[i]) > 1e-9)
            throw ValidationError("compare: receiver coordinate mismatch at index " +
                                  std::to_string(i) + " (" + std::to_string(ra[i]) + " vs " +
                                  std::to_string(rb[i]) + ")");
    std::vector<ErrorReport> out;
    for (std::size_t i = 0; i < ra.size(); ++i)
        out.push_back(compare_traces(reference.per_receiver[i], candidate.per_receiver[i]));
    return out;
}

} // namespace efwave
