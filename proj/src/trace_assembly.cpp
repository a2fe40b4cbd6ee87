#include "porebench/trace_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "porebench/errors.hpp"
#include "porebench/rng.hpp"

namespace porebench {

FluctuationCoefficients draw_fluctuation_coefficients(const BaselineDriftParams& drift, std::uint64_t seed) {
    Rng rng(seed);
    FluctuationCoefficients c;
    for (std::size_t k = 0; k < 4; ++k) c.sin[k] = rng.normal(0.0, drift.sin_sd[k]);
    for (std::size_t k = 0; k < 4; ++k) c.cos[k] = rng.normal(0.0, drift.cos_sd[k]);
    return c;
}

std::vector<double> fluctuation_waveform(double open_pore_current, double slow_amplitude,
                                         const FluctuationCoefficients& coefficients, double angular_frequency,
                                         std::size_t n_samples, double sample_rate) {
    std::vector<double> out(n_samples, 0.0);
    if (slow_amplitude == 0.0) return out;
    const double gain = slow_amplitude * open_pore_current;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double wt = angular_frequency * static_cast<double>(i) / sample_rate;
        double sum = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            const double phase = static_cast<double>(k + 1) * wt;
            sum += coefficients.sin[k] * std::sin(phase) + coefficients.cos[k] * std::cos(phase);
        }
        out[i] = gain * sum;
    }
    return out;
}

namespace {

double resolve_omega(const BaselineDriftParams& drift, std::size_t n_samples, double sample_rate) {
    if (drift.angular_frequency > 0.0) return drift.angular_frequency;
    return 2.0 * std::numbers::pi * sample_rate / static_cast<double>(n_samples);
}

}  // namespace

std::vector<double> slow_fluctuation(double open_pore_current, const BaselineDriftParams& drift,
                                     std::size_t n_samples, double sample_rate, std::uint64_t seed) {
    if (n_samples == 0) return {};
    const auto coefficients = draw_fluctuation_coefficients(drift, seed);
    return fluctuation_waveform(open_pore_current, drift.slow_amplitude, coefficients,
                                resolve_omega(drift, n_samples, sample_rate), n_samples, sample_rate);
}

std::vector<BaselineJump> draw_baseline_jumps(double delta_i, const BaselineDriftParams& drift,
                                              std::size_t n_samples, double sample_rate, std::uint64_t seed) {
    std::vector<BaselineJump> jumps;
    if (n_samples == 0 || drift.expected_jumps_per_10s <= 0.0) return jumps;
    Rng rng(seed);
    const double seconds = static_cast<double>(n_samples) / sample_rate;
    const std::uint64_t count = rng.poisson(drift.expected_jumps_per_10s * seconds / 10.0);
    double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    jumps.resize(count);
    for (auto& j : jumps) j.index = static_cast<std::int64_t>(rng.below(n_samples));
    std::stable_sort(jumps.begin(), jumps.end(),
                     [](const BaselineJump& a, const BaselineJump& b) { return a.index < b.index; });
    for (auto& j : jumps) {
        const double jitter = rng.uniform(-drift.jump_jitter, drift.jump_jitter);
        j.height = sign * drift.jump_height_fraction * delta_i * (1.0 + jitter);
        sign = -sign;
    }
    return jumps;
}

std::vector<double> jump_sequence(const std::vector<BaselineJump>& jumps, std::size_t n_samples) {
    std::vector<double> steps(n_samples, 0.0);
    for (const auto& j : jumps) {
        if (j.index >= 0 && static_cast<std::size_t>(j.index) < n_samples) steps[j.index] += j.height;
    }
    double level = 0.0;
    for (double& s : steps) {
        level += s;
        s = level;
    }
    return steps;
}

std::vector<double> sample_baseline_jumps(double delta_i, const BaselineDriftParams& drift, std::size_t n_samples,
                                          double sample_rate, std::uint64_t seed) {
    return jump_sequence(draw_baseline_jumps(delta_i, drift, n_samples, sample_rate, seed), n_samples);
}

std::size_t TraceConfig::n_samples() const {
    if (!(trace_seconds > 0.0) || !(sampling.sample_rate > 0.0)) {
        throw DomainError("trace length and sample rate must be positive");
    }
    return static_cast<std::size_t>(std::llround(trace_seconds * sampling.sample_rate));
}

TraceSeeds TraceSeeds::derive(std::uint64_t trace_seed) {
    return {derive_seed(trace_seed, 0), derive_seed(trace_seed, 1), derive_seed(trace_seed, 2),
            derive_seed(trace_seed, 3)};
}

AssembledTrace assemble_components(const TraceConfig& config, std::uint64_t trace_seed) {
    if (!(config.snr > 0.0)) throw DomainError("assemble_trace: SNR must be positive");
    const std::size_t n = config.n_samples();
    const double fs = config.sampling.sample_rate;

    AssembledTrace out;
    Trace& trace = out.trace;
    TraceComponents& parts = out.components;
    TraceProvenance& prov = trace.provenance;
    trace.sample_rate = fs;
    prov.trace_seed = trace_seed;
    prov.seeds = TraceSeeds::derive(trace_seed);

    const OpenPoreResult pore = open_pore_current(config.geometry, config.electrolyte, config.bias, config.constants);
    const double i0 = pore.open_pore_current;
    const double delta_i = blockage_amplitude(i0, config.translocation.sphere_diameter, config.geometry.diameter);
    prov.open_pore_current = i0;
    prov.delta_i = delta_i;
    parts.open_pore_current = i0;

    // Events.
    prov.probability = spike_probability(config.translocation, config.bias, config.constants);
    if (prov.probability.clamped) {
        prov.warnings.push_back("spike probability " + std::to_string(prov.probability.raw) + " clamped to 1");
    }
    trace.events = sample_event_starts(prov.probability.value, static_cast<std::int64_t>(n),
                                       config.translocation.duration, config.sampling, prov.seeds.events);
    parts.deficit.assign(n, 0.0);
    for (auto& e : trace.events) {
        e.amplitude = delta_i;
        e.sphere_diameter = config.translocation.sphere_diameter;
        const RenderedPulse pulse = render_waveform(e, config.sampling, config.translocation.fall_fraction);
        for (std::size_t k = 0; k < pulse.deficit.size(); ++k) {
            const auto idx = static_cast<std::size_t>(pulse.first_sample) + k;
            if (idx >= n) break;  // truncated at the trace end; label keeps the nominal duration
            parts.deficit[idx] += pulse.deficit[k];
        }
    }

    // Baseline perturbations.
    const double omega = resolve_omega(config.drift, n, fs);
    prov.fluctuation = draw_fluctuation_coefficients(config.drift, prov.seeds.fluctuation);
    parts.fluctuation = fluctuation_waveform(i0, config.drift.slow_amplitude, prov.fluctuation, omega, n, fs);
    const auto jumps = draw_baseline_jumps(delta_i, config.drift, n, fs, prov.seeds.jumps);
    prov.jump_count = jumps.size();
    parts.jumps = jump_sequence(jumps, n);

    // Noise.
    NoisePsdModel model = make_noise_model(config.geometry, config.electrolyte, config.bias, config.noise,
                                           config.bandwidth, config.constants);
    prov.noise_model_rms = model_rms(model, static_cast<double>(n) / fs);
    model.scale = std::isinf(config.snr) ? 0.0 : snr_scale_factor(delta_i, config.snr, prov.noise_model_rms);
    prov.noise_scale = model.scale;
    NoiseRealization noise = synthesize_colored_noise(model, n, fs, prov.seeds.noise);
    prov.noise_rms = noise.target_rms;
    parts.noise = std::move(noise.samples);

    // Compose and guard.
    double drift_budget = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        drift_budget += std::abs(prov.fluctuation.sin[k]) + std::abs(prov.fluctuation.cos[k]);
    }
    drift_budget *= config.drift.slow_amplitude * i0;
    double jump_budget = 0.0;
    for (const auto& j : jumps) jump_budget += std::abs(j.height);
    const double upper = i0 + drift_budget + jump_budget;

    trace.clean.resize(n);
    trace.noisy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double clean = i0 - parts.deficit[i] + parts.jumps[i] + parts.fluctuation[i];
        if (!(clean > 0.0) || clean > upper * (1.0 + 1e-12)) {
            throw GenerationError("assemble_trace: clean current " + std::to_string(clean) + " A at sample " +
                                  std::to_string(i) + " outside (0, " + std::to_string(upper) + "]");
        }
        trace.clean[i] = clean;
        trace.noisy[i] = clean + parts.noise[i];
    }
    return out;
}

Trace assemble_trace(const TraceConfig& config, std::uint64_t trace_seed) {
    return std::move(assemble_components(config, trace_seed).trace);
}

}  // namespace porebench
