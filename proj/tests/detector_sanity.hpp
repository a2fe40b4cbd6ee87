#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "porebench/detector.hpp"
#include "porebench/event_synth.hpp"
#include "porebench/trace_assembly.hpp"

namespace testing {

// Scores detections on a clean companion trace against the generator's
// events. An event is ambiguous when a baseline jump lands within the
// detector's foot search radius of its span or the trace ends before it does;
// there is no single baseline to measure it against. Ambiguous events are
// neither required nor penalised. Likewise a detection that matches no event
// but spans a jump is a baseline feature (two nearby jumps of opposite sign
// form a dip no detector can tell from a pulse); it is counted separately.
struct SanityScore {
    std::size_t events = 0;
    std::size_t ambiguous = 0;
    std::size_t detections = 0;
    std::size_t unmatched = 0;          // detections outside every event and away from jumps
    std::size_t baseline_steps = 0;     // detections outside every event spanning a jump
    std::size_t missed = 0;             // unambiguous events without a detection
    std::size_t duplicated = 0;         // unambiguous events hit more than once
    std::size_t amplitude_outliers = 0; // hits on unambiguous events off by more than 5 %
    double worst_amplitude_error = 0.0;

    double precision() const {
        const auto scored = detections - baseline_steps;
        return scored == 0 ? 1.0 : 1.0 - static_cast<double>(unmatched) / static_cast<double>(scored);
    }
    // Every detection outside an event counted as false.
    double strict_precision() const {
        return detections == 0 ? 1.0
                               : 1.0 - static_cast<double>(unmatched + baseline_steps) / static_cast<double>(detections);
    }
    double recall() const {
        const auto scored = events - ambiguous;
        return scored == 0 ? 1.0 : 1.0 - static_cast<double>(missed) / static_cast<double>(scored);
    }
    bool pass() const { return unmatched == 0 && missed == 0 && duplicated == 0 && amplitude_outliers == 0; }
};

// Look-ahead of the foot walk: half the half-prominence width of a triangle,
// which is a quarter of its length, and at least 3 samples.
inline std::int64_t jump_margin(std::int64_t hold) { return std::max<std::int64_t>(3, (hold + 3) / 4); }

inline SanityScore score_clean(const porebench::Trace& t, const porebench::TraceConfig& c,
                               const std::vector<porebench::DetectedEvent>& detections) {
    const auto n = static_cast<std::int64_t>(t.clean.size());
    const auto hold = static_cast<std::int64_t>(porebench::hold_steps(c.translocation.duration, c.sampling));
    const auto jumps = porebench::draw_baseline_jumps(t.provenance.delta_i, c.drift, t.clean.size(), t.sample_rate,
                                                      t.provenance.seeds.jumps);
    SanityScore s;
    s.events = t.events.size();
    s.detections = detections.size();
    const std::int64_t margin = jump_margin(hold);
    std::vector<char> ambiguous(t.events.size(), 0);
    for (std::size_t k = 0; k < t.events.size(); ++k) {
        const std::int64_t lo = t.events[k].start_index - margin;
        const std::int64_t hi = t.events[k].start_index + hold + margin;
        bool hit = hi >= n;
        for (const auto& j : jumps) hit = hit || (j.index >= lo && j.index <= hi);
        ambiguous[k] = hit;
        s.ambiguous += hit;
    }
    std::vector<int> hits(t.events.size(), 0);
    for (const auto& d : detections) {
        bool matched = false;
        for (std::size_t k = 0; k < t.events.size(); ++k) {
            const auto start = t.events[k].start_index;
            if (d.peak_index <= start || d.peak_index >= start + hold) continue;
            matched = true;
            ++hits[k];
            if (ambiguous[k]) continue;
            const double err = std::abs(d.amplitude - t.provenance.delta_i) / t.provenance.delta_i;
            s.worst_amplitude_error = std::max(s.worst_amplitude_error, err);
            s.amplitude_outliers += err > 0.05;
        }
        if (matched) continue;
        bool near_jump = false;
        for (const auto& j : jumps) {
            near_jump = near_jump || (j.index >= d.start_index - margin && j.index <= d.end_index + margin);
        }
        ++(near_jump ? s.baseline_steps : s.unmatched);
    }
    for (std::size_t k = 0; k < t.events.size(); ++k) {
        if (ambiguous[k]) continue;
        s.missed += hits[k] == 0;
        s.duplicated += hits[k] > 1;
    }
    return s;
}

}  // namespace testing
