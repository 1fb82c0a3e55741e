#include "imdd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace imdd::detail {
namespace {

// Plan cache keyed by (length, sign). Plans are created once under a lock and
// reused via the new-array execute interface; FFTW_UNALIGNED keeps execution
// valid for arbitrary std::vector storage.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> in(n), out(n);
        fftw_plan p = fftw_plan_dft_1d(
            static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
            reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>>& in, int sign) {
    std::vector<std::complex<double>> out(in.size());
    if (in.empty()) return out;
    fftw_plan p = cache().get(in.size(), sign);
    // const_cast is safe: out-of-place c2c transforms do not write the input.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& in) {
    return transform(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& in) {
    auto out = transform(in, FFTW_BACKWARD);
    const double scale = in.empty() ? 1.0 : 1.0 / static_cast<double>(in.size());
    for (auto& v : out) v *= scale;
    return out;
}

double bin_frequency_hz(std::size_t k, std::size_t n, double sample_rate_hz) {
    const double fk = static_cast<double>(k);
    const double fn = static_cast<double>(n);
    if (2 * k <= n) return fk / fn * sample_rate_hz;
    return (fk - fn) / fn * sample_rate_hz;
}

}  // namespace imdd::detail
