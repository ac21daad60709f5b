#pragma once

#include <cstdint>
#include <random>

namespace rhb {

// Seeded generator shared by every randomized component.
//
// Bits come from std::mt19937_64 seeded with the 64-bit seed (its output
// sequence is fixed by the C++ standard). Uniforms are (bits >> 11) * 2^-53.
// Normals use Box-Muller on two uniforms, returning the cosine branch first
// and the cached sine branch on the next call. Porting these three rules
// reproduces every start point and synthetic dataset bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, n) by rejection (n >= 1).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rhb
