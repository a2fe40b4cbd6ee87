#include "porebench/detector.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <set>

#include "porebench/errors.hpp"

namespace porebench {

namespace {

double median_of(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        m = 0.5 * (m + lower);
    }
    return m;
}

}  // namespace

double estimate_noise_rms(std::span<const double> samples) {
    if (samples.size() < 1000) throw DomainError("estimate_noise_rms: need at least 1000 samples");
    std::vector<double> diff(samples.size() - 1);
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) diff[i] = samples[i + 1] - samples[i];
    const double center = median_of(diff);
    for (double& d : diff) d = std::abs(d - center);
    const double mad = median_of(std::move(diff));
    return 1.482602218505602 * mad / std::sqrt(2.0);
}

std::vector<double> running_median(std::span<const double> samples, std::size_t window) {
    const std::size_t n = samples.size();
    std::vector<double> out(n);
    if (n == 0) return out;
    const std::size_t half = std::max<std::size_t>(window, 1) / 2;

    // Two balanced multisets: `low` holds the smaller half (its max is the median).
    std::multiset<double> low;
    std::multiset<double> high;
    auto rebalance = [&] {
        while (low.size() > high.size() + 1) {
            auto it = std::prev(low.end());
            high.insert(*it);
            low.erase(it);
        }
        while (high.size() > low.size()) {
            auto it = high.begin();
            low.insert(*it);
            high.erase(it);
        }
    };
    auto insert = [&](double x) {
        if (low.empty() || x <= *std::prev(low.end())) {
            low.insert(x);
        } else {
            high.insert(x);
        }
        rebalance();
    };
    auto erase = [&](double x) {
        auto it = low.find(x);
        if (it != low.end()) {
            low.erase(it);
        } else {
            high.erase(high.find(x));
        }
        rebalance();
    };

    std::size_t lo = 0;  // window is [lo, hi)
    std::size_t hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t want_lo = i >= half ? i - half : 0;
        const std::size_t want_hi = std::min(n, i + half + 1);
        while (hi < want_hi) insert(samples[hi++]);
        while (lo < want_lo) erase(samples[lo++]);
        const double top = *std::prev(low.end());
        out[i] = low.size() > high.size() ? top : 0.5 * (top + *high.begin());
    }
    return out;
}

std::vector<std::int64_t> local_maxima(std::span<const double> x) {
    std::vector<std::int64_t> peaks;
    const auto n = static_cast<std::int64_t>(x.size());
    std::int64_t i = 1;
    while (i < n - 1) {
        if (x[i - 1] < x[i]) {
            std::int64_t ahead = i + 1;
            while (ahead < n - 1 && x[ahead] == x[i]) ++ahead;
            if (x[ahead] < x[i]) {
                peaks.push_back((i + ahead - 1) / 2);
                i = ahead;
                continue;
            }
        }
        ++i;
    }
    return peaks;
}

std::vector<PeakProminence> peak_prominences(std::span<const double> x, std::span<const std::int64_t> peaks) {
    const auto n = static_cast<std::int64_t>(x.size());
    std::vector<PeakProminence> out(peaks.size());
    for (std::size_t p = 0; p < peaks.size(); ++p) {
        const std::int64_t peak = peaks[p];
        if (peak < 0 || peak >= n) throw DomainError("peak_prominences: peak index out of range");
        const double height = x[peak];

        std::int64_t i = peak;
        std::int64_t left_base = peak;
        double left_min = height;
        while (i >= 0 && x[i] <= height) {
            if (x[i] < left_min) {
                left_min = x[i];
                left_base = i;
            }
            --i;
        }
        i = peak;
        std::int64_t right_base = peak;
        double right_min = height;
        while (i < n && x[i] <= height) {
            if (x[i] < right_min) {
                right_min = x[i];
                right_base = i;
            }
            ++i;
        }
        out[p] = {height - std::max(left_min, right_min), left_base, right_base};
    }
    return out;
}

namespace {

std::vector<DetectedEvent> prominent_peaks(const std::vector<double>& inverted, double threshold,
                                           const DetectorConfig& config, double sample_rate) {
    std::vector<DetectedEvent> events;
    const auto peaks = local_maxima(inverted);
    const auto prominences = peak_prominences(inverted, peaks);
    for (std::size_t p = 0; p < peaks.size(); ++p) {
        const PeakProminence& pp = prominences[p];
        if (!(pp.prominence >= threshold)) continue;
        const std::int64_t peak = peaks[p];
        const double reference = inverted[peak] - config.boundary_fraction * pp.prominence;
        std::int64_t start = peak;
        while (start > pp.left_base && inverted[start] > reference) --start;
        std::int64_t end = peak;
        while (end < pp.right_base && inverted[end] > reference) ++end;
        DetectedEvent e;
        e.peak_index = peak;
        e.start_index = start;
        e.end_index = end;
        e.amplitude = pp.prominence;
        e.duration = static_cast<double>(end - start) / sample_rate;
        events.push_back(e);
    }
    return events;
}

// Where a candidate pulse meets the baseline: walk outward from the boundary
// crossing to the nearest of the next `lookahead` samples that is lower by
// more than `tolerance`. Exact on a noiseless pulse; the look-ahead rides over
// noise on shallow flanks and shrinks to three samples within `near` of the
// median baseline, so it cannot hop a short plateau onto another level.
std::int64_t walk_to_foot(const std::vector<double>& inverted, std::int64_t from, std::int64_t step,
                          double tolerance, std::int64_t lookahead, double near) {
    const auto n = static_cast<std::int64_t>(inverted.size());
    std::int64_t k = from;
    for (;;) {
        const std::int64_t reach = inverted[k] > near ? lookahead : 3;
        std::int64_t next = k;
        for (std::int64_t m = 1; m <= reach; ++m) {
            const std::int64_t j = k + m * step;
            if (j < 0 || j >= n) break;
            if (inverted[j] < inverted[k] - tolerance) {
                next = j;
                break;
            }
        }
        if (next == k) return k;
        k = next;
    }
}

// Copy of `samples` with every candidate pulse replaced by a straight line
// between its feet.
std::vector<double> bridge_candidates(std::span<const double> samples, const std::vector<double>& inverted,
                                      const std::vector<DetectedEvent>& candidates, double rms) {
    const auto n = static_cast<std::int64_t>(samples.size());
    std::vector<char> masked(samples.size(), 0);
    for (const auto& c : candidates) {
        const double tolerance = 1e-3 * c.amplitude;
        const std::int64_t lookahead = std::max<std::int64_t>(3, (c.end_index - c.start_index) / 2);
        const std::int64_t left = walk_to_foot(inverted, c.start_index, -1, tolerance, lookahead, 0.5 * rms);
        const std::int64_t right = walk_to_foot(inverted, c.end_index, +1, tolerance, lookahead, 0.5 * rms);
        for (std::int64_t i = left + 1; i < right; ++i) masked[i] = 1;
    }
    std::vector<double> out(samples.begin(), samples.end());
    std::int64_t i = 0;
    while (i < n) {
        if (!masked[i]) {
            ++i;
            continue;
        }
        std::int64_t j = i;
        while (j < n && masked[j]) ++j;
        // Run [i, j) is masked; feet are i - 1 and j when inside the trace.
        const double a = i > 0 ? samples[i - 1] : samples[std::min(j, n - 1)];
        const double b = j < n ? samples[j] : a;
        const double span = static_cast<double>(j - i + 1);
        for (std::int64_t k = i; k < j; ++k) out[k] = a + (b - a) * (static_cast<double>(k - i + 1) / span);
        i = j;
    }
    return out;
}

// Median of samples[lo, hi) clipped to the trace; nullopt when empty.
std::optional<double> level(std::span<const double> samples, std::int64_t lo, std::int64_t hi) {
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(samples.size()));
    if (lo >= hi) return std::nullopt;
    std::vector<double> v(samples.begin() + lo, samples.begin() + hi);
    auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

}  // namespace

std::vector<DetectedEvent> detect_events(std::span<const double> samples, double rms, const DetectorConfig& config,
                                         double sample_rate) {
    if (!(rms > 0.0)) throw DomainError("detect_events: rms must be positive");
    if (!(config.threshold_multiple > 0.0)) throw DomainError("detect_events: threshold multiple must be positive");
    if (!(config.boundary_fraction > 0.0 && config.boundary_fraction <= 1.0)) {
        throw DomainError("detect_events: boundary fraction must lie in (0, 1]");
    }
    if (!(config.max_duration_seconds >= 0.0)) throw DomainError("detect_events: max duration must be non-negative");
    if (samples.size() < 3) return {};

    const auto window = static_cast<std::size_t>(std::llround(config.baseline_seconds * sample_rate));
    const double threshold = config.threshold_multiple * rms;
    auto invert = [&](const std::vector<double>& baseline) {
        std::vector<double> inverted(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) inverted[i] = baseline[i] - samples[i];
        return inverted;
    };

    // The running median finds candidates but cannot follow baseline
    // segments shorter than half its window. Each candidate is then measured
    // against a straight line between its own feet.
    const auto inverted = invert(running_median(samples, window));

    // A pulse returns to its baseline. Baseline levels on either side, each
    // over the event's own width, that differ by more than half its height
    // mark a step the median lagged behind.
    auto not_a_pulse = [&](const DetectedEvent& e, const std::vector<double>& baseline) {
        if (config.max_duration_seconds > 0.0 && e.duration > config.max_duration_seconds) return true;
        const std::int64_t width = std::max<std::int64_t>(e.end_index - e.start_index, 3);
        const auto before = level(baseline, e.start_index - width, e.start_index);
        const auto after = level(baseline, e.end_index + 1, e.end_index + 1 + width);
        return before && after && std::abs(*after - *before) > 0.5 * e.amplitude;
    };
    auto candidates = prominent_peaks(inverted, threshold, config, sample_rate);
    const auto preliminary = bridge_candidates(samples, inverted, candidates, rms);
    std::erase_if(candidates, [&](const DetectedEvent& e) { return not_a_pulse(e, preliminary); });
    if (candidates.empty()) return candidates;
    const auto baseline = bridge_candidates(samples, inverted, candidates, rms);
    auto events = prominent_peaks(invert(baseline), threshold, config, sample_rate);
    std::erase_if(events, [&](const DetectedEvent& e) { return not_a_pulse(e, baseline); });
    return events;
}

std::vector<double> event_frequency(const std::vector<DetectedEvent>& detections, double sample_rate) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < detections.size(); ++i) {
        const double dt = static_cast<double>(detections[i + 1].peak_index - detections[i].peak_index) / sample_rate;
        if (!(dt > 0.0)) throw DomainError("event_frequency: detections must be sorted by peak index");
        out.push_back(1.0 / dt);
    }
    return out;
}

std::vector<WindowLabel> aggregate_detections(const std::vector<DetectedEvent>& detections, std::size_t n_samples,
                                              std::size_t window_samples, const std::string& trace_id,
                                              double amplitude_scale) {
    std::vector<SpikeEvent> as_events;
    as_events.reserve(detections.size());
    for (const auto& d : detections) {
        SpikeEvent e;
        e.start_index = d.start_index;
        e.duration = d.duration;
        // label_windows reports amplitude * 1e12 in pA.
        e.amplitude = d.amplitude * amplitude_scale * 1e-12;
        as_events.push_back(e);
    }
    return label_windows(as_events, n_samples, window_samples, trace_id);
}

}  // namespace porebench
