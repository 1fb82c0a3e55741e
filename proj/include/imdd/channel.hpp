#pragma once

#include <cstdint>
#include <vector>

#include "imdd/rng.hpp"
#include "imdd/signal_ops.hpp"
#include "imdd/waveform.hpp"

namespace imdd {

// All parameters of one simulated link scenario. Defaults model standard
// single-mode fiber at 1550 nm behind an 84 GSa/s DAC with a 32 GHz analog
// bandwidth; every value is configurable.
struct LinkConfig {
    double distance_km = 0.0;
    double beta2_ps2_per_km = -21.7;
    double dac_rate_hz = 84e9;
    double lpf_cutoff_hz = 32e9;
    double launch_power_dbm = 1.0;
    double noise_sigma = 0.0;  // receiver AWGN std dev, normalized units
    int dac_bits = 0;          // 0 = no DAC quantization
    int adc_bits = 0;          // 0 = no ADC quantization
    int samples_per_block = 24;

    double launch_power_linear() const { return std::pow(10.0, launch_power_dbm / 10.0); }
    bool quantization_enabled() const { return dac_bits > 0 || adc_bits > 0; }
    void validate() const;
};

struct LinkDiagnostics {
    std::uint64_t mzm_clipped = 0;  // drive samples beyond [0, pi/4] + slack
};

// Mach-Zehnder modulator: field = sqrt(P) * sin(drive) with the drive clipped
// to [0, pi/4]. Clips beyond a 1e-9 slack are counted in diag.
Waveform mzm_modulate(const Waveform& drive, double launch_power_linear,
                      LinkDiagnostics* diag = nullptr);

// Chromatic dispersion: frequency-domain multiplication by
// H(w) = exp(i * (beta2/2) * w^2 * L). All-pass; energy is preserved.
ComplexWaveform apply_dispersion(const ComplexWaveform& field, const LinkConfig& cfg);

// Square-law photodetection, sample-wise |field|^2.
Waveform photodiode(const ComplexWaveform& field);
Waveform photodiode(const Waveform& field);

// Adds i.i.d. zero-mean Gaussian noise of standard deviation sigma.
Waveform add_awgn(const Waveform& w, double sigma, Rng& rng);

// Uniform mid-rise quantization onto 2^bits levels over [-full_scale, +full_scale],
// saturating outside. bits must be in [2, 16].
Waveform quantize(const Waveform& w, int bits, double full_scale);

// Execution record of one link simulation, kept so gradients can be pushed
// back through every stage.
struct ChannelTape {
    LinkConfig cfg;
    double tx_rate_hz = 0.0;
    std::size_t tx_len = 0;
    int up1 = 1, down1 = 1;  // tx rate -> DAC rate
    std::size_t lpf1_len = 0;
    std::size_t drive_len = 0;
    std::vector<double> drive_clipped;                 // MZM input after clipping
    std::vector<std::uint8_t> drive_in_range;          // 1 where not clipped
    std::vector<std::complex<double>> dispersed;       // photodiode input
    int up2 = 1, down2 = 1;  // DAC rate -> rx rate
    std::size_t rx_pre_norm_len = 0;
    NormalizeTape norm;
    bool valid = false;
};

// Full link: brick-wall LPF -> resample to DAC rate -> optional DAC
// quantization -> MZM -> dispersion -> photodiode -> AWGN -> optional ADC
// quantization -> brick-wall LPF -> resample back -> normalize (zero mean,
// unit power). The transmit waveform's sample rate must be a rational
// multiple of the DAC rate.
Waveform simulate_link(const Waveform& tx, const LinkConfig& cfg, Rng& rng,
                       LinkDiagnostics* diag = nullptr);

// Same forward numerics as simulate_link with quantization off, but records a
// tape for channel_backward. Throws ContractError if quantization is enabled.
Waveform simulate_link_differentiable(const Waveform& tx, const LinkConfig& cfg, Rng& rng,
                                      ChannelTape& tape, LinkDiagnostics* diag = nullptr);

// Vector-Jacobian product through the recorded link: maps a cotangent on the
// received samples to a cotangent on the transmit samples. Noise is treated
// as an additive constant (identity gradient).
std::vector<double> channel_backward(const ChannelTape& tape, const std::vector<double>& g_received);

}  // namespace imdd
