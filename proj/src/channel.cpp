#include "imdd/channel.hpp"

#include <algorithm>
#include <cmath>

#include "imdd/errors.hpp"
#include "imdd/fft.hpp"

namespace imdd {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kQuarterPi = kPi / 4.0;
constexpr double kClipSlack = 1e-9;
constexpr double kRxTargetMeanSquare = 1.0;

// Smallest rational p/q close to x, used to derive integer resampling factors
// between the transmit rate and the DAC rate.
void small_ratio(double x, int& p, int& q) {
    if (!(x > 0.0)) throw ParamError("link: rates must be positive");
    for (int den = 1; den <= 4096; ++den) {
        const double num = x * den;
        const double rounded = std::round(num);
        if (rounded >= 1.0 && std::abs(num - rounded) <= 1e-9 * std::max(1.0, num)) {
            p = static_cast<int>(rounded);
            q = den;
            return;
        }
    }
    throw ParamError("link: tx sample rate is not a small rational multiple of the DAC rate");
}

}  // namespace

void LinkConfig::validate() const {
    if (distance_km < 0.0) throw ParamError("LinkConfig: distance_km must be >= 0");
    if (!(dac_rate_hz > 0.0)) throw ParamError("LinkConfig: dac_rate_hz must be positive");
    if (!(lpf_cutoff_hz > 0.0)) throw ParamError("LinkConfig: lpf_cutoff_hz must be positive");
    if (!(lpf_cutoff_hz < dac_rate_hz / 2.0))
        throw ParamError("LinkConfig: lpf_cutoff_hz must be below the DAC Nyquist frequency");
    if (noise_sigma < 0.0) throw ParamError("LinkConfig: noise_sigma must be >= 0");
    if (samples_per_block < 1) throw ParamError("LinkConfig: samples_per_block must be >= 1");
    for (int bits : {dac_bits, adc_bits}) {
        if (bits != 0 && (bits < 2 || bits > 16))
            throw ParamError("LinkConfig: quantizer bits must be 0 (off) or in [2, 16]");
    }
}

Waveform mzm_modulate(const Waveform& drive, double launch_power_linear, LinkDiagnostics* diag) {
    const double amp = std::sqrt(launch_power_linear);
    Waveform out;
    out.sample_rate_hz = drive.sample_rate_hz;
    out.samples.resize(drive.size());
    for (std::size_t i = 0; i < drive.size(); ++i) {
        double v = drive.samples[i];
        if (v < -kClipSlack || v > kQuarterPi + kClipSlack) {
            if (diag) ++diag->mzm_clipped;
        }
        v = std::clamp(v, 0.0, kQuarterPi);
        out.samples[i] = amp * std::sin(v);
    }
    return out;
}

ComplexWaveform apply_dispersion(const ComplexWaveform& field, const LinkConfig& cfg) {
    if (field.samples.empty()) throw DegenerateInputError("apply_dispersion: empty field");
    // beta2 [s^2/m] * L [m]; the ps^2/km and km units fold into 1e-24.
    const double beta2_l = cfg.beta2_ps2_per_km * cfg.distance_km * 1e-24;
    auto spec = detail::fft(field.samples);
    const std::size_t n = spec.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double w = 2.0 * kPi * detail::bin_frequency_hz(k, n, field.sample_rate_hz);
        const double phase = 0.5 * beta2_l * w * w;
        spec[k] *= std::complex<double>(std::cos(phase), std::sin(phase));
    }
    ComplexWaveform out;
    out.sample_rate_hz = field.sample_rate_hz;
    out.samples = detail::ifft(spec);
    return out;
}

Waveform photodiode(const ComplexWaveform& field) {
    Waveform out;
    out.sample_rate_hz = field.sample_rate_hz;
    out.samples.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) out.samples[i] = std::norm(field.samples[i]);
    return out;
}

Waveform photodiode(const Waveform& field) {
    Waveform out;
    out.sample_rate_hz = field.sample_rate_hz;
    out.samples.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) out.samples[i] = field.samples[i] * field.samples[i];
    return out;
}

Waveform add_awgn(const Waveform& w, double sigma, Rng& rng) {
    if (sigma < 0.0) throw ParamError("add_awgn: sigma must be >= 0");
    Waveform out = w;
    if (sigma == 0.0) return out;
    for (auto& v : out.samples) v += rng.gaussian(sigma);
    return out;
}

Waveform quantize(const Waveform& w, int bits, double full_scale) {
    if (bits < 2 || bits > 16) throw ParamError("quantize: bits must be in [2, 16]");
    if (!(full_scale > 0.0)) throw ParamError("quantize: full_scale must be positive");
    const int levels = 1 << bits;
    const double step = 2.0 * full_scale / levels;
    Waveform out;
    out.sample_rate_hz = w.sample_rate_hz;
    out.samples.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        double idx = std::floor((w.samples[i] + full_scale) / step);
        idx = std::clamp(idx, 0.0, static_cast<double>(levels - 1));
        out.samples[i] = -full_scale + (idx + 0.5) * step;
    }
    return out;
}

namespace {

Waveform run_link(const Waveform& tx, const LinkConfig& cfg, Rng& rng, bool allow_quantization,
                  ChannelTape* tape, LinkDiagnostics* diag) {
    cfg.validate();
    if (tx.samples.empty()) throw DegenerateInputError("simulate_link: empty transmit waveform");

    int p = 1, q = 1;
    small_ratio(cfg.dac_rate_hz / tx.sample_rate_hz, p, q);  // tx rate -> DAC rate is p/q
    if (tx.samples.size() % static_cast<std::size_t>(q) != 0)
        throw ParamError("simulate_link: transmit length must be divisible by the rate ratio");

    const Waveform lpf1 = brickwall_lpf(tx, cfg.lpf_cutoff_hz);
    Waveform drive = resample(lpf1, p, q);
    if (allow_quantization && cfg.dac_bits > 0) drive = quantize(drive, cfg.dac_bits, kQuarterPi);

    // MZM with clip bookkeeping for the backward pass.
    const double amp = std::sqrt(cfg.launch_power_linear());
    std::vector<double> drive_clipped(drive.size());
    std::vector<std::uint8_t> in_range(drive.size());
    Waveform field;
    field.sample_rate_hz = drive.sample_rate_hz;
    field.samples.resize(drive.size());
    for (std::size_t i = 0; i < drive.size(); ++i) {
        const double v = drive.samples[i];
        if ((v < -kClipSlack || v > kQuarterPi + kClipSlack) && diag) ++diag->mzm_clipped;
        const double c = std::clamp(v, 0.0, kQuarterPi);
        drive_clipped[i] = c;
        in_range[i] = (v >= 0.0 && v <= kQuarterPi) ? 1 : 0;
        field.samples[i] = amp * std::sin(c);
    }

    const ComplexWaveform dispersed = apply_dispersion(promote(field), cfg);
    Waveform detected = photodiode(dispersed);
    detected = add_awgn(detected, cfg.noise_sigma, rng);
    if (allow_quantization && cfg.adc_bits > 0) {
        double fs = 0.0;
        for (double v : detected.samples) fs = std::max(fs, std::abs(v));
        if (fs > 0.0) detected = quantize(detected, cfg.adc_bits, fs);
    }

    const Waveform lpf2 = brickwall_lpf(detected, cfg.lpf_cutoff_hz);
    const Waveform back = resample(lpf2, q, p);
    NormalizeTape norm_tape;
    Waveform received = normalize_power_recorded(back, kRxTargetMeanSquare, /*remove_mean=*/true, norm_tape);

    if (tape) {
        tape->cfg = cfg;
        tape->tx_rate_hz = tx.sample_rate_hz;
        tape->tx_len = tx.samples.size();
        tape->up1 = p;
        tape->down1 = q;
        tape->lpf1_len = lpf1.samples.size();
        tape->drive_len = drive.samples.size();
        tape->drive_clipped = std::move(drive_clipped);
        tape->drive_in_range = std::move(in_range);
        tape->dispersed = dispersed.samples;
        tape->up2 = q;
        tape->down2 = p;
        tape->rx_pre_norm_len = back.samples.size();
        tape->norm = std::move(norm_tape);
        tape->valid = true;
    }
    return received;
}

}  // namespace

Waveform simulate_link(const Waveform& tx, const LinkConfig& cfg, Rng& rng, LinkDiagnostics* diag) {
    return run_link(tx, cfg, rng, /*allow_quantization=*/true, nullptr, diag);
}

Waveform simulate_link_differentiable(const Waveform& tx, const LinkConfig& cfg, Rng& rng,
                                      ChannelTape& tape, LinkDiagnostics* diag) {
    if (cfg.quantization_enabled())
        throw ContractError("simulate_link_differentiable: quantization must be disabled");
    return run_link(tx, cfg, rng, /*allow_quantization=*/false, &tape, diag);
}

std::vector<double> channel_backward(const ChannelTape& tape, const std::vector<double>& g_received) {
    if (!tape.valid) throw ContractError("channel_backward: no recorded forward pass");

    // normalize
    std::vector<double> g = normalize_power_vjp(tape.norm, g_received);

    // resample back (DAC rate -> rx rate)
    Waveform gw;
    gw.samples = std::move(g);
    gw.sample_rate_hz = tape.tx_rate_hz;
    gw = resample_adjoint(gw, tape.up2, tape.down2, tape.rx_pre_norm_len);

    // receiver LPF (self-adjoint)
    gw = brickwall_lpf(gw, tape.cfg.lpf_cutoff_hz);

    // AWGN: identity.

    // photodiode: d|u|^2 pulled back to the complex field.
    ComplexWaveform gu;
    gu.sample_rate_hz = gw.sample_rate_hz;
    gu.samples.resize(gw.samples.size());
    for (std::size_t i = 0; i < gw.samples.size(); ++i)
        gu.samples[i] = 2.0 * gw.samples[i] * tape.dispersed[i];

    // dispersion adjoint = dispersion with negated beta2.
    LinkConfig adj = tape.cfg;
    adj.beta2_ps2_per_km = -adj.beta2_ps2_per_km;
    gu = apply_dispersion(gu, adj);

    // MZM: field input was real; keep the real part of the pulled-back cotangent.
    const double amp = std::sqrt(tape.cfg.launch_power_linear());
    Waveform gd;
    gd.sample_rate_hz = gu.sample_rate_hz;
    gd.samples.resize(gu.samples.size());
    for (std::size_t i = 0; i < gu.samples.size(); ++i) {
        const double gr = gu.samples[i].real();
        gd.samples[i] =
            tape.drive_in_range[i] ? gr * amp * std::cos(tape.drive_clipped[i]) : 0.0;
    }

    // resample to DAC rate adjoint
    gd = resample_adjoint(gd, tape.up1, tape.down1, tape.lpf1_len);

    // transmitter LPF (self-adjoint)
    gd = brickwall_lpf(gd, tape.cfg.lpf_cutoff_hz);

    return std::move(gd.samples);
}

}  // namespace imdd
