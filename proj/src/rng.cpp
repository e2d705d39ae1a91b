#include "tamp/rng.hpp"

#include "tamp/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tamp {

std::uint64_t Rng::uniform_index(std::uint64_t count) {
    if (count == 0) throw UsageError("uniform_index: count must be positive");
    // Rejection on the top of the range keeps the result exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % count;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % count;
}

double Rng::normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Rng Rng::split() {
    // splitmix64 finalizer on a fresh draw
    std::uint64_t z = engine_() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
}

}  // namespace tamp
