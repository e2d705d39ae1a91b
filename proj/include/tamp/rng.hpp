#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tamp {

/// Deterministic random stream used throughout the library.
///
/// std::mt19937_64 with hand-rolled real and integer conversions; a seed
/// gives the same stream on every standard library.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/53bit-uniform";

    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, count). count must be positive.
    std::uint64_t uniform_index(std::uint64_t count);

    /// Standard normal deviate (Box-Muller, one value per call).
    double normal();

    /// Derives an independent child stream; used to give parallel workers
    /// their own generators.
    Rng split();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace tamp
