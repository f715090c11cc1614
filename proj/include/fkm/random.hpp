#pragma once

#include <cstdint>
#include <random>

#include "fkm/linalg.hpp"

namespace fkm {

/// SplitMix64 finalizer; used to derive independent sub-seeds from (seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Reproducible Gaussian source.
///
/// std::mt19937_64 is fully specified by the standard, but the standard
/// distributions are not, so uniforms and normals are derived here by hand
/// (53-bit uniforms, Box-Muller pairs).
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in the open interval (0, 1).
  double uniform();
  double normal();
  Vector normal_vector(Eigen::Index dim);
  /// Uniform point on the unit sphere S^{dim-1}.
  Vector unit_vector(Eigen::Index dim);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fkm
