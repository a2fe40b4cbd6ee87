#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "porebench/detector.hpp"
#include "porebench/errors.hpp"
#include "porebench/trace_assembly.hpp"
#include "support.hpp"

using namespace porebench;

namespace {

double ulp(double x) { return std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x); }

TraceConfig paper_config() {
    TraceConfig c;
    c.translocation.sphere_diameter = 10e-9;
    c.translocation.concentration = 0.1;
    c.translocation.duration = 1e-3;
    c.snr = 4.0;
    c.trace_seconds = 10.0;
    return c;
}

}  // namespace

TEST_CASE("slow fluctuation reductions") {
    BaselineDriftParams d;
    d.slow_amplitude = 0.0;
    for (double x : slow_fluctuation(5e-10, d, 1000, 1e4, 1)) REQUIRE(x == 0.0);

    FluctuationCoefficients c;
    c.sin[0] = 1.0;
    const double omega = 2 * M_PI;
    const auto w = fluctuation_waveform(5e-10, 0.003, c, omega, 10'000, 1e4);
    for (std::size_t i = 0; i < w.size(); i += 37) {
        CHECK(w[i] == doctest::Approx(0.003 * 5e-10 * std::sin(omega * i / 1e4)).epsilon(1e-12).scale(1e-24));
    }
}

TEST_CASE("slow fluctuation variance over 100 seeds") {
    // Over one full period the time variance is (a0 I0)^2 sum_k (a_k^2 + b_k^2) / 2,
    // whose expectation is (a0 I0)^2 sum_k sd_k^2 and variance (a0 I0)^4 sum_k sd_k^4.
    const BaselineDriftParams d;
    const double i0 = 5e-10;
    const double g2 = std::pow(d.slow_amplitude * i0, 2);
    double expected = 0.0, spread = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        expected += g2 * d.sin_sd[k] * d.sin_sd[k];
        spread += g2 * g2 * std::pow(d.sin_sd[k], 4);
    }
    const double sigma_of_mean = std::sqrt(spread) / 10.0;
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto w = slow_fluctuation(i0, d, 100'000, 1e4, seed);
        double m = 0, s = 0;
        for (double x : w) m += x;
        m /= w.size();
        for (double x : w) s += (x - m) * (x - m);
        total += s / w.size();
    }
    CHECK(std::abs(total / 100 - expected) < 3 * sigma_of_mean);
    CHECK(std::sqrt(total / 100) == doctest::Approx(d.slow_amplitude * i0 * std::sqrt(0.5 * 0.5 * 2 + 0.01 + 0.0025)).epsilon(0.1));
}

TEST_CASE("baseline jumps") {
    BaselineDriftParams d;
    d.expected_jumps_per_10s = 0.0;
    for (double x : sample_baseline_jumps(1e-10, d, 1000, 1e4, 3)) REQUIRE(x == 0.0);

    const auto forced = jump_sequence({{250, 4e-12}}, 1000);
    for (std::size_t i = 0; i < forced.size(); ++i) REQUIRE(forced[i] == (i < 250 ? 0.0 : 4e-12));

    const BaselineDriftParams def;
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const auto jumps = draw_baseline_jumps(1e-10, def, 100'000, 1e4, seed);
        sum += static_cast<double>(jumps.size());
        for (std::size_t k = 0; k < jumps.size(); ++k) {
            REQUIRE(std::abs(jumps[k].height) >= 0.3e-10 * 0.9 * (1 - 1e-12));
            REQUIRE(std::abs(jumps[k].height) <= 0.3e-10 * 1.1 * (1 + 1e-12));
            if (k) {
                REQUIRE(jumps[k].index >= jumps[k - 1].index);
                REQUIRE(jumps[k].height * jumps[k - 1].height < 0.0);
            }
        }
    }
    CHECK(std::abs(sum / 1000 - 30.0) < 3 * std::sqrt(30.0 / 1000));
}

TEST_CASE("full configuration end to end") {
    const TraceConfig c = paper_config();
    const AssembledTrace a = assemble_components(c, 12345);
    const Trace& t = a.trace;
    REQUIRE(t.size() == 100'000);
    REQUIRE(t.clean.size() == t.size());

    // Events: renewal expectation with p = k0 C exp(qV/kT), hold 10 steps.
    const double p = t.provenance.probability.value;
    const double m = 1.0 / p + 9;
    const double expected = 1e5 / m;
    const double sd = std::sqrt(1e5 * (1 - p) / (p * p) / (m * m * m));
    CHECK(std::abs(static_cast<double>(t.events.size()) - expected) < 4 * sd);

    // SNR identity.
    std::vector<double> diff(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) diff[i] = t.noisy[i] - t.clean[i];
    const double snr = t.provenance.delta_i / (6 * empirical_rms(diff));
    CHECK(std::abs(snr / 4.0 - 1.0) < 0.01);

    // Decomposition: noisy - clean reproduces the noise realization.
    for (std::size_t i = 0; i < t.size(); ++i) {
        REQUIRE(std::abs(diff[i] - a.components.noise[i]) <= ulp(t.noisy[i]));
    }

    // Ground truth faithfulness at each apex sample.
    for (const auto& e : t.events) {
        const double apex_time = e.start_time + 0.4 * e.duration;
        const auto idx = static_cast<std::size_t>(std::llround(apex_time * 1e4));
        if (idx >= t.size()) continue;
        const double event_free = a.components.open_pore_current + a.components.jumps[idx] + a.components.fluctuation[idx];
        const RenderedPulse pulse = render_waveform(e, c.sampling);
        const double rendered = pulse.deficit.at(idx - static_cast<std::size_t>(pulse.first_sample));
        CHECK(std::abs((event_free - t.clean[idx]) - rendered) <= ulp(event_free));
        // Whole-sample events put a sample exactly on the apex.
        CHECK(rendered == e.amplitude);
        CHECK(rendered == doctest::Approx(triangle_deficit(e, static_cast<double>(idx) / 1e4)).epsilon(1e-9));
        CHECK(e.amplitude == t.provenance.delta_i);
        CHECK(e.duration == 1e-3);
    }

    // Labels per window count events by start sample.
    const auto labels = label_windows(t.events, t.size(), 5000, "x");
    REQUIRE(labels.size() == 20);
    std::size_t total = 0;
    for (const auto& l : labels) total += l.count;
    CHECK(total == t.events.size());
}

TEST_CASE("seed stability") {
    const TraceConfig c = paper_config();
    const Trace a = assemble_trace(c, 99);
    const Trace b = assemble_trace(c, 99);
    CHECK(a.noisy == b.noisy);
    CHECK(a.clean == b.clean);
    REQUIRE(a.events.size() == b.events.size());
    const Trace other = assemble_trace(c, 100);
    CHECK(a.noisy != other.noisy);
}

TEST_CASE("null trace") {
    TraceConfig c = paper_config();
    c.translocation.concentration = 0.0;
    c.drift.slow_amplitude = 0.0;
    c.drift.expected_jumps_per_10s = 0.0;
    c.snr = 1e12;
    const Trace huge = assemble_trace(c, 5);
    CHECK(huge.events.empty());
    for (double x : huge.noisy) REQUIRE(std::abs(x - huge.provenance.open_pore_current) < 1e-20);

    c.snr = std::numeric_limits<double>::infinity();
    const Trace quiet = assemble_trace(c, 5);
    CHECK(quiet.noisy == quiet.clean);
    for (double x : quiet.noisy) REQUIRE(x == quiet.provenance.open_pore_current);
    CHECK(detect_events(quiet.noisy, 1e-12, DetectorConfig{}, 1e4).empty());
}

TEST_CASE("noise scale to zero gives noisy == clean") {
    TraceConfig c = paper_config();
    c.snr = std::numeric_limits<double>::infinity();
    const Trace t = assemble_trace(c, 8);
    CHECK(t.noisy == t.clean);
    CHECK_FALSE(t.events.empty());
}

TEST_CASE("positivity guard") {
    TraceConfig c = paper_config();
    c.drift.slow_amplitude = 10.0;
    CHECK_THROWS_AS(assemble_trace(c, 1), GenerationError);
    c = paper_config();
    c.snr = 0.0;
    CHECK_THROWS_AS(assemble_trace(c, 1), DomainError);
}

TEST_CASE("clean stays within the documented envelope") {
    TraceConfig c = paper_config();
    c.translocation.sphere_diameter = 17e-9;
    c.translocation.concentration = 1.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const AssembledTrace a = assemble_components(c, seed);
        for (double x : a.trace.clean) REQUIRE(x > 0.0);
    }
}
