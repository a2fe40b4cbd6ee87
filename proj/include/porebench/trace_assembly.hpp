#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "porebench/event_synth.hpp"
#include "porebench/noise_synth.hpp"
#include "porebench/pore_physics.hpp"

namespace porebench {

struct BaselineDriftParams {
    double slow_amplitude = 0.003;                      // a_0
    std::array<double, 4> sin_sd{0.5, 0.5, 0.1, 0.05};  // sd of a_1..a_4
    std::array<double, 4> cos_sd{0.5, 0.5, 0.1, 0.05};  // sd of b_1..b_4
    double angular_frequency = 0.0;                     // rad/s; 0 means 2 pi / trace length
    double jump_height_fraction = 0.3;                  // of the blockage amplitude
    double jump_jitter = 0.1;                           // relative, uniform +-
    double expected_jumps_per_10s = 30.0;
};

struct FluctuationCoefficients {
    std::array<double, 4> sin{};  // a_1..a_4
    std::array<double, 4> cos{};  // b_1..b_4
};

FluctuationCoefficients draw_fluctuation_coefficients(const BaselineDriftParams& drift, std::uint64_t seed);

// a_0 I_0 sum_k (a_k sin(k w t) + b_k cos(k w t)), t = i / sample_rate.
std::vector<double> fluctuation_waveform(double open_pore_current, double slow_amplitude,
                                         const FluctuationCoefficients& coefficients, double angular_frequency,
                                         std::size_t n_samples, double sample_rate);

std::vector<double> slow_fluctuation(double open_pore_current, const BaselineDriftParams& drift,
                                     std::size_t n_samples, double sample_rate, std::uint64_t seed);

struct BaselineJump {
    std::int64_t index = 0;  // first sample at the new level
    double height = 0.0;     // signed step, A
};

// Poisson count with mean expected_jumps_per_10s * seconds / 10, uniform
// instants, heights 0.3 dI (1 + u), u ~ U[-0.1, 0.1], alternating sign from a
// seeded first sign. Sorted by index.
std::vector<BaselineJump> draw_baseline_jumps(double delta_i, const BaselineDriftParams& drift,
                                              std::size_t n_samples, double sample_rate, std::uint64_t seed);

// Cumulative step sequence of a jump schedule.
std::vector<double> jump_sequence(const std::vector<BaselineJump>& jumps, std::size_t n_samples);

std::vector<double> sample_baseline_jumps(double delta_i, const BaselineDriftParams& drift, std::size_t n_samples,
                                          double sample_rate, std::uint64_t seed);

struct TraceConfig {
    PoreGeometry geometry = default_geometry();
    ElectrolyteConfig electrolyte = default_electrolyte();
    BiasConfig bias = default_bias();
    PhysicalConstants constants = PhysicalConstants::generator();
    TranslocationParams translocation;
    NoiseParams noise;
    double bandwidth = 5'000.0;  // Hz
    BaselineDriftParams drift;
    SamplingConfig sampling;
    double trace_seconds = 10.0;
    double snr = 4.0;  // +inf gives a noiseless trace

    std::size_t n_samples() const;
};

struct TraceSeeds {
    std::uint64_t events = 0;
    std::uint64_t noise = 0;
    std::uint64_t fluctuation = 0;
    std::uint64_t jumps = 0;

    // Component streams 0..3 of derive_seed(trace_seed, .).
    static TraceSeeds derive(std::uint64_t trace_seed);
};

struct TraceProvenance {
    bool external = false;
    std::string source;               // external traces: input path
    double source_sample_rate = 0.0;  // external traces: rate before resampling
    std::uint64_t trace_seed = 0;
    TraceSeeds seeds;
    double open_pore_current = 0.0;  // A
    double delta_i = 0.0;            // A
    SpikeProbability probability;
    double noise_model_rms = 0.0;  // A, unscaled model over the trace band
    double noise_scale = 0.0;
    double noise_rms = 0.0;  // A, exact RMS of noisy - clean
    FluctuationCoefficients fluctuation;
    std::size_t jump_count = 0;
    std::vector<std::string> warnings;
};

struct Trace {
    double sample_rate = 10'000.0;
    std::vector<double> noisy;  // A
    std::vector<double> clean;  // A, empty for external traces
    std::vector<SpikeEvent> events;
    TraceProvenance provenance;

    std::size_t size() const { return noisy.size(); }
};

// Every additive part of a generated trace, kept separate for inspection.
struct TraceComponents {
    double open_pore_current = 0.0;
    std::vector<double> deficit;      // sum of rendered pulses (positive = less current)
    std::vector<double> jumps;
    std::vector<double> fluctuation;
    std::vector<double> noise;
};

struct AssembledTrace {
    Trace trace;
    TraceComponents components;
};

AssembledTrace assemble_components(const TraceConfig& config, std::uint64_t trace_seed);

// clean = I_0 - pulses + jumps + slow fluctuation; noisy = clean + noise.
// Throws GenerationError if clean leaves (0, I_0 + drift budget + jump budget].
Trace assemble_trace(const TraceConfig& config, std::uint64_t trace_seed);

}  // namespace porebench
