#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "porebench/rng.hpp"

using namespace porebench;

TEST_CASE("splitmix64 reference outputs") {
    std::uint64_t state = 0;
    CHECK(splitmix64(state) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ull);
    CHECK(splitmix64(state) == 0x06C45D188009454Full);
}

TEST_CASE("derive_seed is a pure function and spreads indices") {
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10'000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 10'000);
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("streams are reproducible") {
    Rng a(99), b(99), c(100);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs |= x != c.next_u64();
    }
    CHECK(differs);
}

TEST_CASE("uniform moments and range") {
    Rng r(1);
    const int n = 1'000'000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sq += u * u;
    }
    CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
    CHECK(std::abs(sq / n - 1.0 / 3) < 0.002);
}

TEST_CASE("below is unbiased across buckets") {
    Rng r(2);
    std::vector<int> counts(7, 0);
    const int n = 700'000;
    for (int i = 0; i < n; ++i) {
        const auto k = r.below(7);
        REQUIRE(k < 7);
        ++counts[k];
    }
    for (int c : counts) CHECK(std::abs(c - n / 7.0) < 5 * std::sqrt(n / 7.0));
}

TEST_CASE("normal moments") {
    Rng r(3);
    const int n = 1'000'000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 0.005);
    CHECK(std::abs(m2 - 1) < 0.005);
    CHECK(std::abs(m4 / (m2 * m2) - 3) < 0.03);
}

TEST_CASE("poisson mean and variance") {
    for (double mean : {0.5, 3.0, 30.0, 1200.0}) {
        Rng r(static_cast<std::uint64_t>(mean * 10));
        const int n = 20'000;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const double k = static_cast<double>(r.poisson(mean));
            s += k;
            s2 += k * k;
        }
        const double m = s / n;
        const double v = s2 / n - m * m;
        CHECK(std::abs(m - mean) < 5 * std::sqrt(mean / n));
        CHECK(v == doctest::Approx(mean).epsilon(0.06));
    }
    Rng r(5);
    CHECK(r.poisson(0.0) == 0);
}
