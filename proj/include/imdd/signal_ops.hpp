#pragma once

#include <cstddef>
#include <vector>

#include "imdd/waveform.hpp"

namespace imdd {

// Symmetric raised-cosine FIR taps of length span_symbols * samples_per_symbol + 1,
// peak-normalized so the center tap is exactly 1. The removable singularities at
// t = +-T/(2*rolloff) are evaluated by their analytic limit. span_symbols must be
// even and positive.
std::vector<double> raised_cosine_taps(double rolloff, int span_symbols, int samples_per_symbol);

// Ideal low-pass filter: DFT bins with |f| > cutoff_hz are zeroed, everything
// else passes untouched. Whole-record periodic filtering; length and rate are
// preserved. Requires cutoff_hz < sample_rate_hz / 2.
Waveform brickwall_lpf(const Waveform& w, double cutoff_hz);

// Rational resampling by up/down: zero-insertion, brick-wall anti-alias filter
// at the smaller of the two Nyquist frequencies, then decimation. Output length
// is ceil(len * up / down) and the rate scales by up/down. A reduced ratio of
// 1/1 returns the input bit-exactly.
Waveform resample(const Waveform& w, int up, int down);

// Adjoint of resample as a linear map: maps a cotangent of the output back to
// input length. input_len is the forward call's input length.
Waveform resample_adjoint(const Waveform& cotangent, int up, int down, std::size_t input_len);

// Scales the record so its mean square equals target_mean_square; optionally
// removes the mean first. Throws DegenerateInputError when the (centered)
// record has no energy.
Waveform normalize_power(const Waveform& w, double target_mean_square, bool remove_mean = false);

// Forward statistics needed to backpropagate through normalize_power.
struct NormalizeTape {
    std::vector<double> input;
    double mean = 0.0;
    double centered_mean_square = 0.0;
    double scale = 0.0;
    double target = 0.0;
    bool removed_mean = false;
};

Waveform normalize_power_recorded(const Waveform& w, double target_mean_square, bool remove_mean,
                                  NormalizeTape& tape);

std::vector<double> normalize_power_vjp(const NormalizeTape& tape, const std::vector<double>& g);

}  // namespace imdd
