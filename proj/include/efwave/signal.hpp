#pragma once

#include <cstddef>
#include <vector>

#include "efwave/errors.hpp"

namespace efwave {

/// Uniformly sampled real time series.
struct SampledSignal {
    double fs = 0.0;            ///< sample rate in Hz
    double t0 = 0.0;            ///< time of the first sample in s
    std::vector<double> samples;

    SampledSignal() = default;
    SampledSignal(double fs_, double t0_, std::vector<double> samples_)
        : fs(fs_), t0(t0_), samples(std::move(samples_)) {
        if (fs <= 0.0) throw ValidationError("SampledSignal: sample rate must be positive");
    }

    std::size_t size() const { return samples.size(); }
    double dt() const { return 1.0 / fs; }
    double time_at(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
};

} // namespace efwave
