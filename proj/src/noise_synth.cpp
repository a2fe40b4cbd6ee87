#include "porebench/noise_synth.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "porebench/errors.hpp"
#include "porebench/fft.hpp"
#include "porebench/rng.hpp"

namespace porebench {

double carrier_count(const PoreGeometry& geometry, double salt_concentration, const PhysicalConstants& constants) {
    if (geometry.diameter < 0.0 || geometry.thickness < 0.0 || salt_concentration < 0.0) {
        throw DomainError("carrier_count: negative input");
    }
    const double d = geometry.diameter;
    return 0.5 * std::numbers::pi * d * d * geometry.thickness * salt_concentration * constants.avogadro;
}

NoisePsdModel make_noise_model(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte,
                               const BiasConfig& bias, const NoiseParams& params, double bandwidth,
                               const PhysicalConstants& constants) {
    const OpenPoreResult pore = open_pore_current(geometry, electrolyte, bias, constants);
    NoisePsdModel model;
    model.params = params;
    model.open_pore_current = pore.open_pore_current;
    model.resistance = pore.resistance;
    model.carrier_count = carrier_count(geometry, electrolyte.salt_concentration, constants);
    model.temperature = bias.temperature;
    model.bandwidth = bandwidth;
    model.constants = constants;
    return model;
}

PsdComponents psd_components(double f, const NoisePsdModel& model) {
    if (!(f > 0.0)) throw DomainError("psd: frequency must be positive");
    const NoiseParams& p = model.params;
    const double kT = model.constants.boltzmann * model.temperature;
    PsdComponents c;
    if (p.hooge_alpha != 0.0) {
        if (!(model.carrier_count > 0.0)) throw DomainError("psd: carrier count must be positive");
        c.flicker = p.hooge_alpha * model.open_pore_current * model.open_pore_current /
                    (model.carrier_count * std::pow(f, p.flicker_exponent));
    }
    c.electrode = p.electrode_coefficient / std::pow(f, p.electrode_exponent);
    c.thermal = model.resistance > 0.0 ? 4.0 * kT / model.resistance : 0.0;
    c.dielectric = 8.0 * std::numbers::pi * kT * p.dielectric_loss * p.chip_capacitance * f;
    return c;
}

double psd_total(double f, const NoisePsdModel& model) { return psd_components(f, model).total(); }

double model_rms(const NoisePsdModel& model, double trace_seconds) {
    if (!(trace_seconds > 0.0)) throw DomainError("model_rms: trace duration must be positive");
    const double f_min = 1.0 / trace_seconds;
    if (!(f_min < model.bandwidth)) throw DomainError("model_rms: 1/trace_duration must lie below the bandwidth");

    // S(f) df = S(e^u) e^u du; the log substitution tames the 1/f terms.
    auto integrand = [&model](double u) {
        const double f = std::exp(u);
        return psd_total(f, model) * f;
    };
    using Integrator = boost::math::quadrature::gauss_kronrod<double, 15>;
    const double lo = std::log(f_min);
    const double hi = std::log(model.bandwidth);
    // One panel per decade keeps each panel's integrand close to polynomial.
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / std::numbers::ln10)));
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + (hi - lo) * i / panels;
        const double b = (i + 1 == panels) ? hi : lo + (hi - lo) * (i + 1) / panels;
        total += Integrator::integrate(integrand, a, b, 15, 1e-10);
    }
    return std::sqrt(total);
}

double snr_scale_factor(double delta_i, double target_snr, double unscaled_rms) {
    const double denominator = 6.0 * target_snr * unscaled_rms;
    if (!(delta_i > 0.0) || !(target_snr > 0.0) || !(unscaled_rms > 0.0) || denominator == 0.0) {
        throw DomainError("snr_scale_factor: amplitude, SNR and RMS must be positive");
    }
    return delta_i / denominator;
}

double empirical_rms(std::span<const double> samples) {
    if (samples.empty()) return 0.0;
    long double sum = 0.0L;
    long double compensation = 0.0L;
    for (double x : samples) {
        const long double term = static_cast<long double>(x) * x - compensation;
        const long double next = sum + term;
        compensation = (next - sum) - term;
        sum = next;
    }
    return static_cast<double>(std::sqrt(sum / static_cast<long double>(samples.size())));
}

void rescale_to_rms(std::vector<double>& samples, double target) {
    if (target == 0.0) {
        std::fill(samples.begin(), samples.end(), 0.0);
        return;
    }
    for (int iteration = 0; iteration < 8; ++iteration) {
        const double current = empirical_rms(samples);
        if (current == 0.0) throw DomainError("rescale_to_rms: cannot rescale an all-zero signal");
        if (std::abs(current - target) <= std::abs(std::nextafter(target, 0.0) - target)) return;
        const double factor = target / current;
        for (double& x : samples) x *= factor;
    }
}

NoiseRealization synthesize_colored_noise(const NoisePsdModel& model, std::size_t n_samples, double sample_rate,
                                          std::uint64_t seed) {
    if (n_samples < 2) throw DomainError("synthesize_colored_noise: need at least two samples");
    if (!(sample_rate > 0.0)) throw DomainError("synthesize_colored_noise: sample rate must be positive");
    if (model.bandwidth > sample_rate / 2.0 * (1.0 + 1e-12)) {
        throw DomainError("synthesize_colored_noise: bandwidth exceeds Nyquist");
    }
    if (model.scale < 0.0) throw DomainError("synthesize_colored_noise: negative scale");

    NoiseRealization out;
    const double seconds = static_cast<double>(n_samples) / sample_rate;
    out.target_rms = model.scale * model_rms(model, seconds);
    if (out.target_rms == 0.0) {
        out.samples.assign(n_samples, 0.0);
        out.degenerate = true;
        return out;
    }

    Rng rng(seed);
    std::vector<double> white(n_samples);
    for (double& x : white) x = rng.normal();

    auto spectrum = fft::forward_real(white);
    // Unit-variance white noise has one-sided PSD 2 / fs.
    const double white_psd = 2.0 / sample_rate;
    const double df = sample_rate / static_cast<double>(n_samples);
    spectrum[0] = 0.0;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        const double f = static_cast<double>(k) * df;
        if (f > model.bandwidth) {
            spectrum[k] = 0.0;
            continue;
        }
        spectrum[k] *= std::sqrt(psd_total(f, model) / white_psd);
    }
    out.samples = fft::inverse_real(spectrum, n_samples);
    rescale_to_rms(out.samples, out.target_rms);
    return out;
}

}  // namespace porebench
