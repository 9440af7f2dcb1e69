#pragma once

#include <cstdint>

namespace kwz {

// Self-contained splitmix64 generator. The standard <random> distributions
// are implementation-defined, and generated meshes must be byte-identical
// for a given seed everywhere, so all sampling is spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);
  // Uniform integer in [lo, hi], both inclusive.
  int uniform_int(int lo, int hi);

  // Independent substream; does not advance this generator.
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t state_;
};

}  // namespace kwz
