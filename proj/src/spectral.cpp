#include "porebench/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "porebench/errors.hpp"
#include "porebench/fft.hpp"

namespace porebench {

PsdEstimate welch_psd(std::span<const double> samples, double sample_rate, std::size_t segment_length) {
    if (segment_length < 4) throw DomainError("welch_psd: segment too short");
    if (samples.size() < segment_length) throw DomainError("welch_psd: fewer samples than one segment");

    std::vector<double> window(segment_length);
    double window_power = 0.0;
    for (std::size_t i = 0; i < segment_length; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                         static_cast<double>(segment_length));
        window_power += window[i] * window[i];
    }

    const std::size_t half = segment_length / 2;
    const std::size_t hop = segment_length / 2;
    PsdEstimate est;
    est.density.assign(half, 0.0);
    std::vector<double> segment(segment_length);
    for (std::size_t start = 0; start + segment_length <= samples.size(); start += hop) {
        double mean = 0.0;
        for (std::size_t i = 0; i < segment_length; ++i) mean += samples[start + i];
        mean /= static_cast<double>(segment_length);
        for (std::size_t i = 0; i < segment_length; ++i) segment[i] = (samples[start + i] - mean) * window[i];
        const auto spectrum = fft::forward_real(segment);
        for (std::size_t k = 1; k <= half; ++k) est.density[k - 1] += std::norm(spectrum[k]);
        ++est.segments;
    }

    const double norm = 1.0 / (sample_rate * window_power * static_cast<double>(est.segments));
    est.frequency.resize(half);
    for (std::size_t k = 1; k <= half; ++k) {
        est.frequency[k - 1] = static_cast<double>(k) * sample_rate / static_cast<double>(segment_length);
        // One-sided: double every bin except Nyquist.
        est.density[k - 1] *= (k == half && segment_length % 2 == 0 ? 1.0 : 2.0) * norm;
    }
    return est;
}

double band_average(const PsdEstimate& estimate, double lo, double hi) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < estimate.frequency.size(); ++i) {
        if (estimate.frequency[i] >= lo && estimate.frequency[i] < hi) {
            sum += estimate.density[i];
            ++count;
        }
    }
    if (count == 0) throw DomainError("band_average: no bins in band");
    return sum / static_cast<double>(count);
}

}  // namespace porebench
