#pragma once

#include <complex>
#include <vector>

namespace imdd::detail {

// Unnormalized forward DFT (engineering sign convention, X_k = sum x_j e^{-2pi i jk/N}).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in);

// Inverse DFT including the 1/N factor.
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in);

// Baseband frequency of DFT bin k for an N-point transform at sample rate fs.
// Bins above N/2 map to negative frequencies.
double bin_frequency_hz(std::size_t k, std::size_t n, double sample_rate_hz);

}  // namespace imdd::detail
