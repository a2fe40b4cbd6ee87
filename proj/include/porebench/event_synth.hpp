#pragma once

#include <cstdint>
#include <vector>

#include "porebench/pore_physics.hpp"

namespace porebench {

struct SamplingConfig {
    double sample_rate = 10'000.0;  // Hz

    double timestep() const { return 1.0 / sample_rate; }
};

struct TranslocationParams {
    double sphere_diameter = 10e-9;         // m
    double concentration = 0.1;             // nmol/L
    double duration = 1e-3;                 // s
    double probability_coefficient = 9.1e-8;  // 1/(nmol/L)
    double fall_fraction = 0.4;             // share of the duration spent falling to the apex
};

struct SpikeEvent {
    std::int64_t start_index = 0;  // sample at which the pore entered the blocked state
    double start_time = 0.0;       // s, start_index / sample_rate
    double duration = 0.0;         // s, nominal
    double amplitude = 0.0;        // A, current deficit at the apex
    double sphere_diameter = 0.0;  // m

    double end_time() const { return start_time + duration; }
};

struct SpikeProbability {
    double value = 0.0;  // per-timestep probability, in [0, 1]
    double raw = 0.0;    // before clamping
    bool clamped = false;
};

// k_0 C_np exp(qV / k_B T), clamped to [0, 1].
SpikeProbability spike_probability(const TranslocationParams& params, const BiasConfig& bias,
                                   const PhysicalConstants& constants = PhysicalConstants::generator());

// Number of timesteps a blocked state is held: ceil(duration / dt), with a
// 1e-9 step tolerance so durations that are whole multiples of dt are exact.
std::int64_t hold_steps(double duration, const SamplingConfig& sampling);

// Two-state walk over n_steps timesteps. In the open state each step draws
// "blocked" with probability p; a blocked draw opens an event that holds for
// hold_steps(duration) steps. Returned events carry start/duration only.
std::vector<SpikeEvent> sample_event_starts(double probability, std::int64_t n_steps, double duration,
                                            const SamplingConfig& sampling, std::uint64_t seed);

// Triangle deficit sampled on the sample grid: zero at the feet, `amplitude`
// at start + fall_fraction * duration. `first_sample` is the sample index of
// deficit[0]; only samples strictly inside the event are emitted.
struct RenderedPulse {
    std::int64_t first_sample = 0;
    std::vector<double> deficit;
};

RenderedPulse render_waveform(const SpikeEvent& event, const SamplingConfig& sampling,
                              double fall_fraction = 0.4);

// Continuous triangle at time t (s). Shared by rendering and by tests.
double triangle_deficit(const SpikeEvent& event, double t, double fall_fraction = 0.4);

}  // namespace porebench
