#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>

#include "mgamma/dual_tables.hpp"
#include "mgamma/subsets.hpp"

namespace mgamma {

/// Truncation policy shared by every series evaluator. Terms are added in
/// order of total degree; evaluation stops once a whole degree shell
/// contributes less than tol times the running sum, or when a cap is hit
/// (in which case the result is flagged unconverged).
struct SeriesParams {
  double tol = 1e-12;
  int max_total_degree = 400;
  std::size_t max_terms = 40'000'000;
};

/// A truncated series value plus its convergence report.
struct SeriesValue {
  double value = 0.0;
  bool converged = false;
  std::size_t terms = 0;

  operator double() const { return value; }
};

/// Pochhammer symbol (a)_k by the recurrence (a)_0 = 1, (a)_{k+1} = (a+k)(a)_k.
double pochhammer(double a, int k);

/// Generalized hypergeometric series
///   sum_k [(a_1)_k ... (a_p)_k / ((b_1)_k ... (b_m)_k)] z^k / k!.
/// No lower parameter may be a nonpositive integer.
SeriesValue hyp_pfq(std::span<const double> a, std::span<const double> b,
                    double z, const SeriesParams& params = {});

/// The confluent two-variable series
///   sum_{m,n} (a)_m / (b)_{m+n} * x^m/m! * y^n/n!.
SeriesValue horn_phi3(double a, double b, double x, double y,
                      const SeriesParams& params = {});

/// Triple series
///   sum (a)_{m1} (b)_{m2} (c)_{m3} / ((a+c)_{m1+m3} (b+c)_{m2+m3})
///     * z1^{m1}/m1! z2^{m2}/m2! z3^{m3}/m3!.
SeriesValue lauricella_fi(double a, double b, double c, double z1, double z2,
                          double z3, const SeriesParams& params = {});

/// Quadruple series
///   sum 1 / ((l1)_{m1+m2+m3} (l2)_{2m1+m2+m4})
///     * z1^{m1}/m1! ... z4^{m4}/m4!.
SeriesValue lauricella_fii(double l1, double l2, const std::array<double, 4>& z,
                           const SeriesParams& params = {});

/// Quadruple series
///   sum (lambda)_{|l|} / ((lambda)_{l2+l3+l4} (lambda)_{l1+l3+l4}
///        (lambda)_{l1+l2+l4}) * z^l / l!.
SeriesValue lauricella_1f3(double lambda, const std::array<double, 4>& z,
                           const SeriesParams& params = {});

/// Coefficients c_alpha of the expansion [1 - R(z)]^{-lambda} =
/// sum_alpha c_alpha z^alpha, where R is the remainder polynomial of a dual
/// table, collected by monomial up to a total-degree bound. c_0 = 1.
class CoefficientExpansion {
 public:
  CoefficientExpansion(int n, int degree) : n_(n), degree_(degree) {}

  int dimension() const { return n_; }
  int degree_bound() const { return degree_; }
  double coeff(const MultiIndex& alpha) const;
  const std::map<MultiIndex, double>& nonzero() const { return coeff_; }
  void add(const MultiIndex& alpha, double value);

 private:
  int n_;
  int degree_;
  std::map<MultiIndex, double> coeff_;
};

/// Multinomial expansion of [1 - R]^{-lambda} = sum_k (lambda)_k R^k / k!
/// truncated at total degree <= degree.
CoefficientExpansion c_alpha_expansion(const DualTables& tables, double lambda,
                                       int degree);

/// Regularized lower incomplete gamma P(shape, x), monotone in x, in [0,1].
double reg_lower_incomplete_gamma(double shape, double x);

}  // namespace mgamma
