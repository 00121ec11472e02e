#pragma once

#include <cstdint>
#include <random>

#include "wfa/core.hpp"

namespace wfa {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Portable pseudo-random source. The engine is fully specified by the
/// standard and doubles are built from the top 53 bits, so draws do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for (root, stream), e.g. one per experiment trial.
  static Rng stream(std::uint64_t root, std::uint64_t stream);

  std::uint64_t next() { return eng_(); }
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double sign() { return (eng_() >> 63) ? 1.0 : -1.0; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

  Vector vector(Eigen::Index n, double lo = -1.0, double hi = 1.0);
  Matrix matrix(Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0);
  Vector unit_vector(Eigen::Index n);

 private:
  std::mt19937_64 eng_;
};

}  // namespace wfa
