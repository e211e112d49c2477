#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lulc {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard. uniform_index and uniform01 use only
/// integer arithmetic and exact conversions, so they are bit-identical on every
/// platform (std::uniform_int_distribution is not). normal() additionally goes
/// through libm log/sin/cos.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), unbiased (rejection on the top of the range).
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Standard normal via the Box-Muller transform.
    double normal();

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Mixes a base seed with stream identifiers (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

}  // namespace lulc
