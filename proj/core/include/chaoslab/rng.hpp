#pragma once

#include <cstdint>
#include <random>

namespace chaoslab {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of realization r in a run: depends only on (base_seed, r), never on
// which worker executes the task or in what order.
constexpr std::uint64_t realization_seed(std::uint64_t base_seed, std::uint64_t realization) noexcept {
    return base_seed ^ mix64(realization);
}

// std::mt19937_64 has a fully specified output sequence; the double conversion
// is done here rather than by std::uniform_real_distribution, whose algorithm
// is implementation-defined. Same seed -> same draws on every platform.
class UniformSampler {
  public:
    explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace chaoslab
