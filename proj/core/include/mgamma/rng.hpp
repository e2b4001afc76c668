#pragma once

#include <cstdint>
#include <random>

namespace mgamma {

/// Deterministic random stream: a (seed, stream) pair fully determines the
/// draw sequence, and distinct stream ids give statistically independent
/// streams for sharded sampling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Uniform on the open interval (0,1).
  double uniform();

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Exact gamma variate with the given shape and scale. Shape 0 returns
  /// exactly 0 (point mass), which the mixture samplers rely on when a
  /// Poisson-driven shape lands on zero. Uses the Marsaglia-Tsang
  /// squeeze-rejection method with the shape < 1 boost.
  double gamma(double shape, double scale);

  /// Exact Poisson variate. Rate 0 returns 0. Inversion by uniform products
  /// for small rates, Hormann's transformed rejection with squeeze (PTRS)
  /// for large ones.
  std::uint64_t poisson(double rate);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace mgamma
