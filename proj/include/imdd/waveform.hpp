#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace imdd {

// A sampled real signal with its sample rate. The unit flowing between DSP
// stages; values are normalized (unitless).
struct Waveform {
    std::vector<double> samples;
    double sample_rate_hz = 1.0;

    std::size_t size() const noexcept { return samples.size(); }

    double energy() const noexcept {
        double e = 0.0;
        for (double v : samples) e += v * v;
        return e;
    }

    double mean_square() const noexcept {
        return samples.empty() ? 0.0 : energy() / static_cast<double>(samples.size());
    }
};

// Complex-valued counterpart, used for the optical field between the
// dispersion operator and the photodiode.
struct ComplexWaveform {
    std::vector<std::complex<double>> samples;
    double sample_rate_hz = 1.0;

    std::size_t size() const noexcept { return samples.size(); }

    double energy() const noexcept {
        double e = 0.0;
        for (const auto& v : samples) e += std::norm(v);
        return e;
    }
};

inline ComplexWaveform promote(const Waveform& w) {
    ComplexWaveform out;
    out.sample_rate_hz = w.sample_rate_hz;
    out.samples.assign(w.samples.begin(), w.samples.end());
    return out;
}

}  // namespace imdd
