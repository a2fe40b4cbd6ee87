#pragma once

#include <array>
#include <cstdint>

namespace porebench {

// splitmix64 finaliser; also the seed expander for Xoshiro256.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t value);

// Per-item seed derivation used everywhere a child stream is needed:
//   derive_seed(parent, index) = mix64(parent ^ mix64(index + 0x9E3779B97F4A7C15))
// Stable across releases; recorded in dataset manifests as kSeedDerivationId.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);
inline constexpr const char* kSeedDerivationId = "splitmix64-xor-v1";

// xoshiro256** with hand-written samplers. Output depends only on the seed,
// never on the standard library in use.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n > 0.
    std::uint64_t below(std::uint64_t n);

    bool bernoulli(double p) { return uniform() < p; }

    // Standard normal, Marsaglia polar method.
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Poisson by multiplication of uniforms, chunked so exp(-mean) never underflows.
    std::uint64_t poisson(double mean);

private:
    std::array<std::uint64_t, 4> s_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace porebench
