#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace lsmi {

/// Purpose tags keep independent draws on disjoint streams.
enum class StreamPurpose : std::uint64_t {
    Snapshots = 1,
    Contamination = 2,
    Test = 99,
};

/// Seed for the stream identified by (master seed, key path). Mixing is
/// SplitMix64, so neighbouring keys give unrelated seeds.
std::uint64_t derive_seed(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path);

/// A seeded generator with the couple of draws the simulator needs.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}
    RngStream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> path)
        : engine_(derive_seed(master_seed, path)) {}

    /// Circular complex normal with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance = 1.0);

    /// Uniform on [0, 1).
    double uniform();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace lsmi
