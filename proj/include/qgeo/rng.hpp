#pragma once

#include <cstdint>
#include <random>

namespace qgeo {

// Seeded random source with a portable output sequence.
//
// std::mt19937_64's raw output is fixed by the standard, but the standard
// distributions are not, so uniform draws are derived here directly from the
// engine bits. Same seed gives the same stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), unbiased (rejection sampling). bound > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform integer in [lo, hi], lo <= hi.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

// Seed for stream `index` under `master`. Distinct indices give decorrelated
// seeds, so per-attempt work can be keyed on (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qgeo
