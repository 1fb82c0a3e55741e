#include "imdd/signal_ops.hpp"

#include <cmath>
#include <numeric>

#include "imdd/errors.hpp"
#include "imdd/fft.hpp"

namespace imdd {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

// Zeroes DFT bins whose normalized frequency |f/fs| fails the keep predicate.
// keep_below is exclusive when strict, inclusive otherwise.
std::vector<double> apply_freq_mask(const std::vector<double>& x, double keep_fraction, bool strict) {
    std::vector<std::complex<double>> buf(x.begin(), x.end());
    auto spec = detail::fft(buf);
    const std::size_t n = spec.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double frac = std::abs(detail::bin_frequency_hz(k, n, 1.0));
        const bool keep = strict ? (frac < keep_fraction) : (frac <= keep_fraction);
        if (!keep) spec[k] = 0.0;
    }
    auto out = detail::ifft(spec);
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = out[k].real();
    return y;
}

void reduce_ratio(int& up, int& down) {
    const int g = std::gcd(up, down);
    up /= g;
    down /= g;
}

}  // namespace

std::vector<double> raised_cosine_taps(double rolloff, int span_symbols, int samples_per_symbol) {
    if (!(rolloff >= 0.0 && rolloff <= 1.0)) throw ParamError("raised_cosine_taps: rolloff must be in [0,1]");
    if (span_symbols <= 0 || span_symbols % 2 != 0)
        throw ParamError("raised_cosine_taps: span_symbols must be positive and even");
    if (samples_per_symbol < 1) throw ParamError("raised_cosine_taps: samples_per_symbol must be >= 1");

    const int len = span_symbols * samples_per_symbol + 1;
    const int center = span_symbols * samples_per_symbol / 2;
    std::vector<double> taps(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) {
        const double t = static_cast<double>(k - center) / samples_per_symbol;
        const double q = 2.0 * rolloff * t;
        double h;
        if (std::abs(std::abs(q) - 1.0) < 1e-12) {
            // Removable singularity at t = +-T/(2*rolloff).
            h = sinc(t) * kPi / 4.0;
        } else {
            h = sinc(t) * std::cos(kPi * rolloff * t) / (1.0 - q * q);
        }
        taps[static_cast<std::size_t>(k)] = h;
    }
    const double peak = taps[static_cast<std::size_t>(center)];
    for (auto& v : taps) v /= peak;
    return taps;
}

Waveform brickwall_lpf(const Waveform& w, double cutoff_hz) {
    if (w.samples.empty()) throw DegenerateInputError("brickwall_lpf: empty waveform");
    if (!(cutoff_hz > 0.0)) throw ParamError("brickwall_lpf: cutoff must be positive");
    if (!(cutoff_hz < w.sample_rate_hz / 2.0))
        throw ParamError("brickwall_lpf: cutoff must be below Nyquist");
    Waveform out;
    out.sample_rate_hz = w.sample_rate_hz;
    out.samples = apply_freq_mask(w.samples, cutoff_hz / w.sample_rate_hz, /*strict=*/false);
    return out;
}

Waveform resample(const Waveform& w, int up, int down) {
    if (up < 1 || down < 1) throw ParamError("resample: factors must be >= 1");
    if (w.samples.empty()) throw DegenerateInputError("resample: empty waveform");
    reduce_ratio(up, down);
    if (up == 1 && down == 1) return w;

    const std::size_t in_len = w.samples.size();
    const std::size_t mid_len = in_len * static_cast<std::size_t>(up);
    std::vector<double> mid(mid_len, 0.0);
    for (std::size_t i = 0; i < in_len; ++i) mid[i * static_cast<std::size_t>(up)] = w.samples[i];

    // Anti-alias at the smaller of the input and output Nyquist frequencies,
    // expressed as a fraction of the intermediate rate.
    const double keep = std::min(1.0 / (2.0 * up), 1.0 / (2.0 * down));
    auto filtered = apply_freq_mask(mid, keep, /*strict=*/true);

    const std::size_t out_len = (mid_len + static_cast<std::size_t>(down) - 1) / static_cast<std::size_t>(down);
    Waveform out;
    out.sample_rate_hz = w.sample_rate_hz * up / down;
    out.samples.resize(out_len);
    const double gain = static_cast<double>(up);
    for (std::size_t j = 0; j < out_len; ++j)
        out.samples[j] = gain * filtered[j * static_cast<std::size_t>(down)];
    return out;
}

Waveform resample_adjoint(const Waveform& cotangent, int up, int down, std::size_t input_len) {
    if (up < 1 || down < 1) throw ParamError("resample_adjoint: factors must be >= 1");
    reduce_ratio(up, down);
    Waveform out;
    out.sample_rate_hz = cotangent.sample_rate_hz * down / up;
    if (up == 1 && down == 1) {
        if (cotangent.samples.size() != input_len) throw ShapeError("resample_adjoint: length mismatch");
        out.samples = cotangent.samples;
        return out;
    }
    const std::size_t mid_len = input_len * static_cast<std::size_t>(up);
    const std::size_t out_len = (mid_len + static_cast<std::size_t>(down) - 1) / static_cast<std::size_t>(down);
    if (cotangent.samples.size() != out_len) throw ShapeError("resample_adjoint: length mismatch");

    std::vector<double> mid(mid_len, 0.0);
    const double gain = static_cast<double>(up);
    for (std::size_t j = 0; j < out_len; ++j)
        mid[j * static_cast<std::size_t>(down)] = gain * cotangent.samples[j];

    const double keep = std::min(1.0 / (2.0 * up), 1.0 / (2.0 * down));
    auto filtered = apply_freq_mask(mid, keep, /*strict=*/true);

    out.samples.resize(input_len);
    for (std::size_t i = 0; i < input_len; ++i)
        out.samples[i] = filtered[i * static_cast<std::size_t>(up)];
    return out;
}

namespace {

Waveform normalize_impl(const Waveform& w, double target, bool remove_mean, NormalizeTape* tape) {
    if (!(target > 0.0)) throw ParamError("normalize_power: target must be positive");
    if (w.samples.empty()) throw DegenerateInputError("normalize_power: empty waveform");
    const std::size_t n = w.samples.size();

    double mean = 0.0;
    if (remove_mean) {
        for (double v : w.samples) mean += v;
        mean /= static_cast<double>(n);
    }
    double ms = 0.0;
    for (double v : w.samples) {
        const double z = v - mean;
        ms += z * z;
    }
    ms /= static_cast<double>(n);
    if (ms < 1e-30) throw DegenerateInputError("normalize_power: record has no usable energy");

    const double scale = std::sqrt(target / ms);
    Waveform out;
    out.sample_rate_hz = w.sample_rate_hz;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = scale * (w.samples[i] - mean);

    if (tape) {
        tape->input = w.samples;
        tape->mean = mean;
        tape->centered_mean_square = ms;
        tape->scale = scale;
        tape->target = target;
        tape->removed_mean = remove_mean;
    }
    return out;
}

}  // namespace

Waveform normalize_power(const Waveform& w, double target_mean_square, bool remove_mean) {
    return normalize_impl(w, target_mean_square, remove_mean, nullptr);
}

Waveform normalize_power_recorded(const Waveform& w, double target_mean_square, bool remove_mean,
                                  NormalizeTape& tape) {
    return normalize_impl(w, target_mean_square, remove_mean, &tape);
}

std::vector<double> normalize_power_vjp(const NormalizeTape& tape, const std::vector<double>& g) {
    const std::size_t n = tape.input.size();
    if (g.size() != n) throw ShapeError("normalize_power_vjp: cotangent length mismatch");
    const double s = tape.scale;
    const double m = tape.centered_mean_square;

    double dot = 0.0;  // sum g_i * z_i
    for (std::size_t i = 0; i < n; ++i) dot += g[i] * (tape.input[i] - tape.mean);

    std::vector<double> gz(n);
    const double c = s / (static_cast<double>(n) * m) * dot;
    for (std::size_t i = 0; i < n; ++i) gz[i] = s * g[i] - c * (tape.input[i] - tape.mean);

    if (tape.removed_mean) {
        double gm = 0.0;
        for (double v : gz) gm += v;
        gm /= static_cast<double>(n);
        for (auto& v : gz) v -= gm;
    }
    return gz;
}

}  // namespace imdd
