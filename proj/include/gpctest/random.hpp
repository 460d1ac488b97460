#pragma once

#include <cstdint>
#include <limits>

namespace gpctest {

// xoshiro256** seeded through splitmix64. Substreams are derived by hashing
// (seed, index), so replication r of an experiment always sees the same
// stream regardless of the order in which replications run.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  // Independent stream number `index` of the family rooted at `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  // Uniform on the open interval (0,1), 53-bit resolution.
  double uniform();
  // Standard normal (Marsaglia polar method).
  double normal();
  // Standard exponential, -log(U).
  double exponential();
  // Gamma(shape, 1), Marsaglia-Tsang with the U^(1/a) boost for shape < 1.
  double gamma(double shape);

 private:
  std::uint64_t s_[4];
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gpctest
