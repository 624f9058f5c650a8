#pragma once

#include <cstdint>
#include <random>

#include "santalo/types.hpp"

namespace santalo {

// Deterministic random stream. Distributions are implemented on top of the
// raw 64-bit output (not std:: distributions, whose exact sequences differ
// between standard libraries), so a given seed produces the same draws on
// every build. Streams for concurrent tasks are derived with derive(), which
// mixes (seed, index) so that task substreams never overlap by construction.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(mix(seed)) {}

  static RngStream derive(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(mix(master_seed ^ mix(stream_id + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via Box-Muller; one spare value is cached.
  double normal();

  // Two-sided (Laplace) exponential with rate lambda, density l/2 e^{-l|t|}.
  double laplace(double lambda);

  Vector normal_vector(int n);
  Vector uniform_in_box(const Box& box);
  // Uniform direction on the unit sphere S^{n-1}.
  Vector sphere_direction(int n);

 private:
  static std::uint64_t mix(std::uint64_t z);

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace santalo
