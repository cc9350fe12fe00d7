#pragma once

#include <cstdint>
#include <random>

#include "magloc/types.hpp"

namespace magloc {

/// Finalizer of the splitmix64 generator. Used to derive independent
/// per-stream seeds from (master seed, stream index) so that results do not
/// depend on thread scheduling.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random source built on std::mt19937_64.
///
/// The distribution transforms are written out explicitly (instead of using
/// std::uniform_real_distribution / std::normal_distribution, whose output
/// sequences are implementation-defined) so that a given seed reproduces the
/// same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_seed_(seed), engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal draw (Box-Muller; consumes two uniforms per call).
  double gaussian();

  /// Uniform direction on the unit sphere.
  Vec3 unit_vector();

  /// Uniform random rotation (Shoemake's quaternion method).
  Mat3 rotation();

  /// Child generator for stream `stream`, independent of draws made here.
  Rng spawn(std::uint64_t stream) const { return Rng(mix_seed(base_seed_, stream)); }

  std::uint64_t base_seed() const { return base_seed_; }

 private:
  std::uint64_t base_seed_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace magloc
