#include "porebench/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "porebench/errors.hpp"

namespace porebench::fft {

namespace {

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
std::unique_ptr<T[], FftwFree> allocate(std::size_t n) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)));
    if (!p) throw std::bad_alloc();
    return std::unique_ptr<T[], FftwFree>(p);
}

class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan) {
        if (!plan_) throw std::runtime_error("fftw: plan creation failed");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> signal) {
    const std::size_t n = signal.size();
    if (n == 0) return {};
    auto in = allocate<double>(n);
    auto out = allocate<fftw_complex>(n / 2 + 1);
    std::unique_ptr<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = std::make_unique<Plan>(
            fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(signal.begin(), signal.end(), in.get());
    plan->execute();
    std::vector<std::complex<double>> spectrum(n / 2 + 1);
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] = {out[k][0], out[k][1]};
    return spectrum;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> half_spectrum, std::size_t n) {
    if (n == 0) return {};
    if (half_spectrum.size() != n / 2 + 1) throw DomainError("fft::inverse_real: spectrum size mismatch");
    auto in = allocate<fftw_complex>(n / 2 + 1);
    auto out = allocate<double>(n);
    std::unique_ptr<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        // c2r destroys its input, which is a private copy here.
        plan = std::make_unique<Plan>(
            fftw_plan_dft_c2r_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < half_spectrum.size(); ++k) {
        in[k][0] = half_spectrum[k].real();
        in[k][1] = half_spectrum[k].imag();
    }
    plan->execute();
    std::vector<double> signal(n);
    const double norm = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) signal[i] = out[i] * norm;
    return signal;
}

}  // namespace porebench::fft
