#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace porebench {

struct PsdEstimate {
    std::vector<double> frequency;  // Hz, bins 1..segment/2 (DC omitted)
    std::vector<double> density;    // one-sided, units^2/Hz
    std::size_t segments = 0;
};

// Welch averaged periodogram: Hann window, 50% overlap, segment mean removed.
PsdEstimate welch_psd(std::span<const double> samples, double sample_rate, std::size_t segment_length);

// Mean of `density` over bins whose frequency lies in [lo, hi).
double band_average(const PsdEstimate& estimate, double lo, double hi);

}  // namespace porebench
