#pragma once

#include <span>
#include <vector>

#include "mgamma/subsets.hpp"

namespace mgamma {

/// Multilinear polynomial P(theta) = sum_T p_T theta^T over subsets T of
/// {1,...,n}. Coefficients are stored densely over all 2^n subsets.
///
/// Scale polynomials of the gamma families are normalized to constant term 1;
/// that normalization is enforced where a polynomial enters a distribution
/// (spec construction, divisibility check, samplers), not here, because the
/// derivative algebra legitimately produces other constants.
class AffinePolynomial {
 public:
  /// The polynomial 1 (all non-constant coefficients zero).
  explicit AffinePolynomial(int n);

  /// Builds from a dense table indexed by bitmask (table[mask] = p_T).
  static AffinePolynomial from_dense(int n, std::vector<double> table);

  /// Product polynomial prod_i (1 + scale_i theta_i) of independent margins.
  static AffinePolynomial independent(std::span<const double> scales);

  /// The one-parameter exchangeable polynomial
  ///   -q/p + (1/p) prod_i (1 + p theta_i),  q = 1 - p,  0 < p < 1,
  /// whose coefficients are p_T = p^(|T|-1).
  static AffinePolynomial exchangeable(int n, double p);

  int dimension() const { return n_; }
  std::size_t table_size() const { return coeff_.size(); }

  double coeff(SubsetIndex t) const;
  double coeff_mask(std::uint32_t mask) const { return coeff_[mask]; }
  void set_coeff(SubsetIndex t, double value);

  /// Shorthand for the coefficient of the full monomial theta_1...theta_n.
  double top_coeff() const { return coeff_.back(); }

  /// Evaluates sum_T p_T prod_{t in T} theta_t.
  double operator()(std::span<const double> theta) const;

  /// Restriction to the variables in T (theta_i = 0 off T), reindexed to
  /// a polynomial in |T| variables keeping the members' increasing order.
  AffinePolynomial restricted(SubsetIndex t) const;

  /// Multilinear partial derivative (d/d theta)^T: the coefficient of
  /// theta^U in the result is p_{T union U} for U disjoint from T, and the
  /// variables of T no longer appear. Stays in n variables.
  AffinePolynomial differentiated(SubsetIndex t) const;

  /// True if some non-constant coefficient is zero (the samplers for
  /// n = 3, 4 and the derived polynomials require all p_T != 0).
  bool has_zero_coeff() const;

  friend bool operator==(const AffinePolynomial&, const AffinePolynomial&) = default;

 private:
  int n_;
  std::vector<double> coeff_;  // coeff_[mask] = p_T, coeff_[0] = 1
};

/// The derived polynomial S_T = (1/p_Tc) (d/d theta)^Tc P over the variables
/// of T (Tc the complement), reindexed to |T| variables: its coefficient of
/// theta^U is p_{Tc union U} / p_Tc. Requires p_Tc != 0, and rejects
/// polynomials with any vanishing coefficient.
AffinePolynomial s_polynomial(const AffinePolynomial& p, SubsetIndex t);

}  // namespace mgamma
