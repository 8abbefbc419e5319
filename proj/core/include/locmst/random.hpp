#pragma once

#include <cstdint>
#include <random>

namespace locmst {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for replicate r of experiment e under a master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t experiment, std::uint64_t replicate) noexcept;

/// Deterministic 64-bit generator.  Wraps mt19937_64 (fully specified by the
/// standard) and converts to doubles itself, so streams are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Exact Poisson variate: multiplicative inversion for mean < 30, the PTRS
/// transformed-rejection method otherwise.
std::int64_t poisson_count(double mean, Rng& rng);

}  // namespace locmst
