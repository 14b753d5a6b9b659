#pragma once

#include <cstdint>
#include <random>

namespace qwave {

/// Seeded random stream used for all measurement sampling.
///
/// The generator is the 64-bit Mersenne Twister (std::mt19937_64), whose
/// output sequence is fully specified by the C++ standard, so identical
/// seeds produce identical samples on every platform. Uniform doubles are
/// built from the top 53 bits of one output word; the std::*_distribution
/// adapters are never used because their streams are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

/// Stateless sub-seed derivation (splitmix64 of seed + index). Gives each
/// shot an independent stream so shots can run in any order and still
/// reproduce the sequential results.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace qwave
