#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "porebench/dataset_io.hpp"

namespace porebench {

enum class RmsSource { oracle, estimated };

struct DetectorConfig {
    double threshold_multiple = 4.0;  // minimum prominence in units of noise RMS
    RmsSource rms_source = RmsSource::oracle;
    double boundary_fraction = 0.5;   // boundaries at peak - fraction * prominence
    double baseline_seconds = 0.5;    // running-median window
    double max_duration_seconds = 0.01;  // longer dips are baseline segments; 0 disables
};

struct DetectedEvent {
    std::int64_t peak_index = 0;
    std::int64_t start_index = 0;
    std::int64_t end_index = 0;
    double amplitude = 0.0;  // prominence, in the units of the input samples
    double duration = 0.0;   // s, (end - start) / sample_rate
};

// Robust background RMS: 1.4826 * MAD of the first differences / sqrt(2).
// Needs at least 1,000 samples.
double estimate_noise_rms(std::span<const double> samples);

// Centered running median over `window` samples, truncated at the ends.
std::vector<double> running_median(std::span<const double> samples, std::size_t window);

// Topographic prominence of each index in `peaks` (scipy convention: the
// reference saddle is the higher of the two minima between the peak and the
// nearest strictly higher sample on each side, or the signal edge).
struct PeakProminence {
    double prominence = 0.0;
    std::int64_t left_base = 0;
    std::int64_t right_base = 0;
};
std::vector<PeakProminence> peak_prominences(std::span<const double> signal, std::span<const std::int64_t> peaks);

// Local maxima; plateaus report their middle sample (rounded down).
std::vector<std::int64_t> local_maxima(std::span<const double> signal);

// Inverts the trace about its running-median baseline and keeps local maxima
// with prominence >= threshold_multiple * rms. Sorted by peak index.
std::vector<DetectedEvent> detect_events(std::span<const double> samples, double rms, const DetectorConfig& config,
                                         double sample_rate = 10'000.0);

// 1 / (t_next_peak - t_peak) for every event but the last, Hz.
std::vector<double> event_frequency(const std::vector<DetectedEvent>& detections, double sample_rate = 10'000.0);

// Per-window (count, mean amplitude pA, mean duration ms); a detection belongs
// to the window holding its start sample. `amplitude_scale` converts detector
// amplitudes to pA (1e12 for ampere input).
std::vector<WindowLabel> aggregate_detections(const std::vector<DetectedEvent>& detections, std::size_t n_samples,
                                              std::size_t window_samples, const std::string& trace_id,
                                              double amplitude_scale);

}  // namespace porebench
