#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "porebench/errors.hpp"
#include "porebench/evaluation.hpp"
#include "porebench/rng.hpp"

#include "oracles/normal_equations.hpp"

using namespace porebench;

namespace {

WindowLabel label(const std::string& id, std::size_t w, std::size_t count, double amp, double dur) {
    return {id, w, count, amp, dur};
}

ErrorRecord record(const std::string& id, std::size_t w, double c, double a, double d) {
    ErrorRecord r;
    r.trace_id = id;
    r.window_index = w;
    r.count_error = c;
    r.amplitude_error = a;
    r.duration_error = d;
    return r;
}

}  // namespace

TEST_CASE("relative error") {
    CHECK(relative_error(110, 100) == 0.1);
    CHECK(relative_error(0, 100) == 1.0);
    CHECK(relative_error(90, 100) == 0.1);
    for (double x : {0.5, 3.0, 1e-12, 7e5}) CHECK(relative_error(x, x) == 0.0);
    CHECK_THROWS_AS(relative_error(1, 0), DomainError);
}

TEST_CASE("rpd") {
    CHECK(rpd(1, 0) == 2.0);
    CHECK(rpd(0, 1) == 2.0);
    CHECK(rpd(3, 1) == 1.0);
    CHECK(rpd(0, 0) == 0.0);
    for (double x : {0.5, 3.0, 1e-12, 7e5}) CHECK(rpd(x, x) == 0.0);

    Rng rng(42);
    for (int i = 0; i < 10'000; ++i) {
        const double x = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-6, 6));
        const double y = rng.uniform(-1, 1) * std::pow(10.0, rng.uniform(-6, 6));
        CHECK(rpd(x, y) == rpd(y, x));
        CHECK(rpd(x, y) >= 0.0);
        CHECK(rpd(x, y) <= 2.0);
        if (y != 0.0) CHECK(relative_error(x, y) >= 0.0);
    }
}

TEST_CASE("zero rules and direct scoring") {
    const std::vector<WindowLabel> truth{label("a", 0, 0, 0, 0), label("a", 1, 0, 0, 0), label("a", 2, 2, 100, 2)};
    const std::vector<WindowLabel> pred{label("a", 2, 2, 90, 2.5), label("a", 0, 0, 0, 0), label("a", 1, 1, 50, 1)};
    const auto r = score_predictions(pred, truth);
    REQUIRE(r.size() == 3);

    CHECK(r[0].count_error == 0.0);
    CHECK(r[0].amplitude_error == 0.0);
    CHECK(r[0].duration_error == 0.0);
    CHECK_FALSE(r[0].improper);

    CHECK(r[1].count_error == 1.0);
    CHECK(r[1].amplitude_error == 1.0);
    CHECK(r[1].duration_error == 1.0);
    CHECK(r[1].improper);

    CHECK(r[2].window_index == 2);
    CHECK(r[2].count_error == 0.0);
    CHECK(r[2].amplitude_error == 0.1);
    CHECK(r[2].duration_error == 0.25);
    CHECK_FALSE(r[2].improper);
}

TEST_CASE("scoring totality and key mismatch") {
    Rng rng(7);
    std::vector<WindowLabel> truth, pred;
    for (std::size_t t = 0; t < 5; ++t) {
        for (std::size_t w = 0; w < 20; ++w) {
            const auto c = rng.below(4);
            truth.push_back(label("t" + std::to_string(t), w, c, c ? rng.uniform(50, 150) : 0, c ? rng.uniform(1, 5) : 0));
            const auto pc = rng.below(4);
            pred.push_back(label("t" + std::to_string(t), w, pc, pc ? rng.uniform(50, 150) : 0, pc ? rng.uniform(1, 5) : 0));
        }
    }
    const auto r = score_predictions(pred, truth);
    REQUIRE(r.size() == truth.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r[i].trace_id == truth[i].trace_id);
        CHECK(r[i].window_index == truth[i].window_index);
        CHECK(r[i].count_error >= 0.0);
        if (r[i].improper) {
            CHECK(r[i].count_error == 1.0);
            CHECK(r[i].amplitude_error == 1.0);
            CHECK(r[i].duration_error == 1.0);
        }
    }

    auto missing = pred;
    missing.pop_back();
    CHECK_THROWS_AS(score_predictions(missing, truth), ValidationError);
    auto extra = pred;
    extra.push_back(label("zz", 0, 0, 0, 0));
    try {
        score_predictions(extra, truth);
        FAIL("expected mismatch");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("zz#0") != std::string::npos);
    }
}

TEST_CASE("aggregation examples") {
    const CellLookup one{{"a", {1.0, 0.1, 10.0}}};
    auto rep = aggregate({record("a", 0, 0.1, 0.1, 0.1), record("a", 1, 0.3, 0.3, 0.3)}, one);
    REQUIRE(rep.per_cell.size() == 1);
    CHECK(rep.per_cell[0].stats.count.mean == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(rep.per_cell[0].stats.count.std == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(rep.per_cell[0].stats.count.n == 2);

    rep = aggregate({record("a", 0, 0, 0, 0), record("a", 1, 0, 0, 0)}, one);
    CHECK(rep.totals.count.mean == 0.0);
    CHECK(rep.totals.amplitude.std == 0.0);
    for (const auto& c : rep.per_cell) CHECK(c.stats.duration.mean == 0.0);

    // Two durations, three windows at one and one window at the other.
    const CellLookup two{{"a", {1.0, 0.1, 10.0}}, {"b", {2.0, 0.1, 10.0}}};
    rep = aggregate({record("a", 0, 0.05, 0, 0), record("a", 1, 0.1, 0, 0), record("a", 2, 0.15, 0, 0),
                     record("b", 0, 0.2, 0, 0)},
                    two);
    REQUIRE(rep.per_duration.size() == 2);
    CHECK(rep.per_duration[0].stats.count.mean == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(rep.per_duration[1].stats.count.mean == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(rep.totals.count.mean == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(rep.per_surface.size() == 1);
    CHECK(rep.per_surface[0].stats.count.n == 4);

    CHECK_THROWS_AS(aggregate({record("c", 0, 0, 0, 0)}, two), ValidationError);
    CHECK(aggregate({record("c", 0, 0.5, 0, 0)}, std::nullopt).per_cell.size() == 1);
}

TEST_CASE("aggregation totals recompute from raw records") {
    Rng rng(11);
    CellLookup cells;
    std::vector<ErrorRecord> records;
    const double durations[] = {1.0, 2.5, 5.0};
    for (int t = 0; t < 30; ++t) {
        const std::string id = "t" + std::to_string(t);
        cells[id] = {durations[t % 3], 0.1 * (t % 5 + 1), 8.0 + t % 2};
        for (std::size_t w = 0; w < 20; ++w) {
            records.push_back(record(id, w, rng.uniform(0, 2), rng.uniform(0, 1), rng.uniform(0, 1)));
        }
    }
    const auto rep = aggregate(records, cells);

    // Independent recomputation in long double.
    std::map<double, std::pair<long double, int>> by_duration;
    long double sum = 0;
    for (const auto& r : records) {
        auto& [s, n] = by_duration[cells[r.trace_id].duration_ms];
        s += r.count_error;
        ++n;
        sum += r.count_error;
    }
    long double mean_of_means = 0;
    for (const auto& [d, sn] : by_duration) mean_of_means += sn.first / sn.second;
    mean_of_means /= by_duration.size();
    const long double grand = sum / records.size();
    long double ss = 0;
    for (const auto& r : records) ss += (r.count_error - grand) * (r.count_error - grand);
    const long double sd = std::sqrt(ss / records.size());

    CHECK(std::abs(rep.totals.count.mean - static_cast<double>(mean_of_means)) <= 1e-12 * mean_of_means);
    CHECK(std::abs(rep.totals.count.std - static_cast<double>(sd)) <= 1e-12 * sd);
    CHECK(rep.window_count == records.size());
    CHECK(rep.per_cell.size() == 30);
    std::size_t n = 0;
    for (const auto& c : rep.per_cell) n += c.stats.count.n;
    CHECK(n == records.size());

    const auto j = report_to_json(rep);
    CHECK(j["std_convention"] == "population");
    CHECK(j["totals"]["count"]["mean"].get<double>() == rep.totals.count.mean);
    CHECK(j["per_cell"].size() == 30);
}

TEST_CASE("window frequency") {
    CHECK(window_frequency(2, 0.5) == 4.0);
    CHECK(window_frequency(0, 0.5) == 0.0);
    CHECK(window_frequency(1, 1.0) == 1.0);
    CHECK(window_frequency(3) == 6.0);
    CHECK_THROWS_AS(window_frequency(1, 0.0), DomainError);
}

TEST_CASE("linear fit") {
    const std::vector<double> xs{0, 1, 2, 3, 4, 5};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2 * x + 1);
    auto f = linear_fit(xs, ys);
    CHECK(f.slope == 2.0);
    CHECK(f.intercept == 1.0);
    CHECK(f.r_squared == 1.0);

    f = linear_fit(xs, std::vector<double>(6, 3.5));
    CHECK(f.slope == 0.0);
    CHECK(f.intercept == 3.5);
    CHECK(f.r_squared == 0.0);

    ys = xs;
    ys[3] = 9.0;
    f = linear_fit(xs, ys);
    const auto line = oracle::normal_equations(xs, ys);
    CHECK(std::abs(f.slope - static_cast<double>(line.slope)) <= 1e-12 * std::abs(line.slope));
    CHECK(std::abs(f.intercept - static_cast<double>(line.intercept)) <= 1e-12 * std::abs(line.intercept));

    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(50), y(50);
        for (int i = 0; i < 50; ++i) {
            x[i] = rng.uniform(-10, 10);
            y[i] = 0.7 * x[i] - 2 + rng.normal();
        }
        const auto fit = linear_fit(x, y);
        const auto ref = oracle::normal_equations(x, y);
        CHECK(std::abs(fit.slope - static_cast<double>(ref.slope)) <= 1e-12 * std::abs(ref.slope));
        CHECK(fit.r_squared >= 0.0);
        CHECK(fit.r_squared <= 1.0);
    }

    CHECK_THROWS_AS(linear_fit({1, 1, 1}, {1, 2, 3}), DomainError);
    CHECK_THROWS_AS(linear_fit({1}, {1}), DomainError);
}
