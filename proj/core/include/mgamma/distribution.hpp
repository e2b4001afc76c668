#pragma once

#include <span>
#include <vector>

#include "mgamma/affine_polynomial.hpp"

namespace mgamma {

/// A multivariate gamma distribution: Laplace transform [P(theta)]^{-lambda}.
struct MgdSpec {
  AffinePolynomial poly;
  double lambda = 1.0;

  MgdSpec(AffinePolynomial p, double shape);
  int dimension() const { return poly.dimension(); }
};

/// A multifactor gamma distribution: Laplace transform
/// [P(theta)]^{-lambda} prod_i (1 + p_i theta_i)^{-(margin_shapes[i]-lambda)}
/// with margin_shapes[i] >= lambda > 0.
struct MfgdSpec {
  AffinePolynomial poly;
  double lambda = 1.0;
  std::vector<double> margin_shapes;  // per-coordinate shapes, size n

  MfgdSpec(AffinePolynomial p, double shape, std::vector<double> margins);
  int dimension() const { return poly.dimension(); }
};

/// Laplace transform value at theta. Requires P(theta) > 0 (and, for the
/// multifactor form, 1 + p_i theta_i > 0).
double laplace_transform(const MgdSpec& spec, std::span<const double> theta);
double laplace_transform(const MfgdSpec& spec, std::span<const double> theta);

struct Moments {
  std::vector<double> mean;
  std::vector<double> covariance;  // row-major n x n

  double cov(int i, int j) const {
    return covariance[static_cast<std::size_t>(i) * mean.size() + j];
  }
  double correlation(int i, int j) const;
};

/// Mean and covariance implied by the Laplace transform:
/// mgd has mean_i = lambda p_i, var_i = lambda p_i^2 and
/// cov_ij = lambda (p_i p_j - p_ij); the multifactor form upgrades the
/// diagonal to the per-margin shapes and keeps the cross terms.
Moments moments(const MgdSpec& spec);
Moments moments(const MfgdSpec& spec);

}  // namespace mgamma
