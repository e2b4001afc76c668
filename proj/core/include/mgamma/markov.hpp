#pragma once

#include <span>
#include <vector>

#include "mgamma/affine_polynomial.hpp"

namespace mgamma {

/// Small dense square matrix, row-major.
struct SquareMatrix {
  int n = 0;
  std::vector<double> a;

  explicit SquareMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Square-root correlation matrix of a first-order chain: unit diagonal,
/// a_{i,j} = prod_{l=i..j-1} sqrt(rho_{l,l+1}) for i < j, symmetric.
/// Every rho must lie in (0,1).
SquareMatrix markov_sqrt_matrix(std::span<const double> rho_chain);

/// Expands det(I + D_theta R_half) into an affine polynomial: the
/// coefficient of theta^T is the principal minor det(R_half[T,T]).
/// Optional per-axis scales apply p_T <- p_T * prod_{i in T} scales[i]
/// (the polynomial of the componentwise-scaled vector). Input must be
/// symmetric with unit diagonal.
AffinePolynomial markov_polynomial(const SquareMatrix& r_half,
                                   std::span<const double> scales = {});

}  // namespace mgamma
