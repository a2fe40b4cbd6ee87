#include "porebench/event_synth.hpp"

#include <algorithm>
#include <cmath>

#include "porebench/errors.hpp"
#include "porebench/rng.hpp"

namespace porebench {

namespace {

// Durations are specified in ms and sampled at 10 kHz, so duration * rate is
// integral up to representation error; snap those to the integer.
double samples_in(double seconds, double sample_rate) {
    const double x = seconds * sample_rate;
    const double nearest = std::round(x);
    return std::abs(x - nearest) < 1e-9 ? nearest : x;
}

}  // namespace

SpikeProbability spike_probability(const TranslocationParams& params, const BiasConfig& bias,
                                   const PhysicalConstants& constants) {
    if (!(bias.temperature > 0.0)) throw DomainError("spike_probability: temperature must be positive");
    if (params.concentration < 0.0 || params.probability_coefficient < 0.0) {
        throw DomainError("spike_probability: concentration and coefficient must be non-negative");
    }
    SpikeProbability p;
    p.raw = params.probability_coefficient * params.concentration *
            std::exp(constants.elementary_charge * bias.voltage / (constants.boltzmann * bias.temperature));
    p.clamped = p.raw > 1.0;
    p.value = p.clamped ? 1.0 : p.raw;
    return p;
}

std::int64_t hold_steps(double duration, const SamplingConfig& sampling) {
    if (!(duration > 0.0)) throw DomainError("hold_steps: duration must be positive");
    const double steps = duration * sampling.sample_rate;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(steps - 1e-9)));
}

std::vector<SpikeEvent> sample_event_starts(double probability, std::int64_t n_steps, double duration,
                                            const SamplingConfig& sampling, std::uint64_t seed) {
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw DomainError("sample_event_starts: probability outside [0, 1]");
    }
    std::vector<SpikeEvent> events;
    if (probability == 0.0 || n_steps <= 0) return events;

    const std::int64_t hold = hold_steps(duration, sampling);
    Rng rng(seed);
    std::int64_t step = 0;
    while (step < n_steps) {
        if (rng.bernoulli(probability)) {
            SpikeEvent e;
            e.start_index = step;
            e.start_time = static_cast<double>(step) / sampling.sample_rate;
            e.duration = duration;
            events.push_back(e);
            step += hold;
        } else {
            ++step;
        }
    }
    return events;
}

double triangle_deficit(const SpikeEvent& event, double t, double fall_fraction) {
    const double rel = (t - event.start_time) / event.duration;
    if (rel <= 0.0 || rel >= 1.0) return 0.0;
    if (rel <= fall_fraction) return event.amplitude * (rel / fall_fraction);
    return event.amplitude * ((1.0 - rel) / (1.0 - fall_fraction));
}

RenderedPulse render_waveform(const SpikeEvent& event, const SamplingConfig& sampling, double fall_fraction) {
    if (!(fall_fraction > 0.0 && fall_fraction < 1.0)) {
        throw DomainError("render_waveform: fall fraction must lie in (0, 1)");
    }
    RenderedPulse pulse;
    pulse.first_sample = event.start_index + 1;
    // Offsets are measured in samples from the start instant so the apex is
    // hit exactly whenever it falls on the grid.
    const double span = samples_in(event.duration, sampling.sample_rate);
    const double apex = fall_fraction * span;
    const auto last = static_cast<std::int64_t>(std::ceil(span)) - 1;
    pulse.deficit.reserve(static_cast<std::size_t>(std::max<std::int64_t>(last, 0)));
    for (std::int64_t k = 1; k <= last; ++k) {
        const double x = static_cast<double>(k);
        double value = 0.0;
        if (x <= apex) {
            value = event.amplitude * (x / apex);
        } else if (x < span) {
            value = event.amplitude * ((span - x) / (span - apex));
        }
        pulse.deficit.push_back(value);
    }
    return pulse;
}

}  // namespace porebench
