#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "porebench/pore_physics.hpp"

namespace porebench {

// Four-component current-noise model of a SiN_x pore below 5 kHz.
struct NoiseParams {
    double hooge_alpha = 1.9e-4;           // dimensionless
    double flicker_exponent = 1.0;         // beta_1
    double electrode_coefficient = 2e-24;  // A^2
    double electrode_exponent = 1.5;       // beta_2
    double dielectric_loss = 0.27;         // d_L
    double chip_capacitance = 52e-9;       // F
};

struct NoisePsdModel {
    NoiseParams params;
    double open_pore_current = 0.0;  // A
    double resistance = 0.0;         // ohm
    double carrier_count = 0.0;      // N_c
    double temperature = 300.0;      // K
    double bandwidth = 5'000.0;      // Hz
    double scale = 1.0;              // amplitude factor applied to realizations
    PhysicalConstants constants = PhysicalConstants::generator();
};

struct PsdComponents {
    double flicker = 0.0;     // alpha_H I_0^2 / (N_c f^beta_1)
    double electrode = 0.0;   // alpha_e / f^beta_2
    double thermal = 0.0;     // 4 k_B T / R
    double dielectric = 0.0;  // 8 pi k_B T d_L C_chip f

    double total() const { return flicker + electrode + thermal + dielectric; }
};

// N_c = pi d_p^2 h c_0 N_A / 2.
double carrier_count(const PoreGeometry& geometry, double salt_concentration,
                     const PhysicalConstants& constants = PhysicalConstants::generator());

NoisePsdModel make_noise_model(const PoreGeometry& geometry, const ElectrolyteConfig& electrolyte,
                               const BiasConfig& bias, const NoiseParams& params = {},
                               double bandwidth = 5'000.0,
                               const PhysicalConstants& constants = PhysicalConstants::generator());

// One-sided PSD in A^2/Hz of the unscaled model. Throws DomainError for f <= 0.
PsdComponents psd_components(double f, const NoisePsdModel& model);
double psd_total(double f, const NoisePsdModel& model);

// sqrt of the PSD integrated over [1 / trace_seconds, bandwidth], unscaled.
// Adaptive Gauss-Kronrod in log-frequency, relative tolerance 1e-6 or better.
double model_rms(const NoisePsdModel& model, double trace_seconds);

// Amplitude factor that makes delta_i / (6 * s * unscaled_rms) == target_snr.
double snr_scale_factor(double delta_i, double target_snr, double unscaled_rms);

// Root mean square with extended-precision accumulation; the value the exact
// rescale in synthesize_colored_noise is defined against.
double empirical_rms(std::span<const double> samples);

struct NoiseRealization {
    std::vector<double> samples;  // A
    double target_rms = 0.0;      // scale * model_rms over the realization length
    bool degenerate = false;      // target was zero; samples are all zero
};

// White Gaussian draw -> FFT -> bin k multiplied by sqrt(S(f_k) / (2 / fs)),
// DC and bins above the bandwidth zeroed -> inverse FFT -> rescaled so that
// empirical_rms(samples) equals target_rms to within one ulp.
NoiseRealization synthesize_colored_noise(const NoisePsdModel& model, std::size_t n_samples,
                                          double sample_rate, std::uint64_t seed);

// Multiplies `samples` in place until empirical_rms hits `target` (<= 1 ulp).
void rescale_to_rms(std::vector<double>& samples, double target);

}  // namespace porebench
