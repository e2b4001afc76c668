#pragma once

#include <span>
#include <vector>

#include "mgamma/distribution.hpp"
#include "mgamma/series.hpp"

namespace mgamma {

/// Bivariate density of the gamma family built on
/// P2 = 1 + p1 t1 + p2 t2 + p12 t1 t2: a gamma-kernel prefactor times the
/// single series F1(lambda; c x1 x2) with c the pair coefficient of the dual
/// partition table. Zero outside (0,inf)^2; requires divisibility.
SeriesValue pdf_bgd(const AffinePolynomial& p2, double lambda,
                    std::span<const double> x, const SeriesParams& params = {});

/// Bivariate density with one upgraded margin shape lambda2 >= lambda
/// (series Phi3 instead of F1).
SeriesValue pdf_multisensor(const AffinePolynomial& p2, double lambda,
                            double lambda2, std::span<const double> x,
                            const SeriesParams& params = {});

/// Bivariate multifactor density, both margins upgraded (triple series).
SeriesValue pdf_bivariate_mfgd(const AffinePolynomial& p2, double lambda,
                               double lambda1, double lambda2,
                               std::span<const double> x,
                               const SeriesParams& params = {});

/// Trivariate density via the four-argument Lauricella series in the
/// pairwise and triple dual coefficients.
SeriesValue pdf_tgd(const AffinePolynomial& p3, double lambda,
                    std::span<const double> x, const SeriesParams& params = {});

/// Density of the exchangeable family (all coefficients p^{|T|-1}):
/// one hypergeometric factor F_{n-1} in the product of the coordinates.
SeriesValue pdf_exchangeable(int n, double p, double lambda,
                             std::span<const double> x,
                             const SeriesParams& params = {});

/// Density of a general infinitely divisible gamma family evaluated through
/// the c_alpha expansion of its remainder polynomial. Construction does the
/// expansion once; evaluation sums degree shells per point and reports
/// convergence.
class GeneralDensity {
 public:
  GeneralDensity(const MgdSpec& spec, int degree, const SeriesParams& params = {});

  SeriesValue operator()(std::span<const double> x) const;
  const CoefficientExpansion& expansion() const { return expansion_; }

 private:
  int n_;
  double lambda_;
  double log_norm_;
  std::vector<double> tilt_;
  SeriesParams params_;
  CoefficientExpansion expansion_;
  // coefficients divided by (lambda)_alpha, grouped by total degree
  struct Term {
    std::vector<int> alpha;
    double value;
  };
  std::vector<std::vector<Term>> shells_;
};

/// One-shot version of GeneralDensity for a single point.
SeriesValue pdf_general(const MgdSpec& spec, std::span<const double> x,
                        const SeriesParams& params = {});

/// Closed-form Laplace transform of (X_2,...,X_n) given X_1 = x1 for an
/// infinitely divisible family: S^{-lambda} exp{-[P(0,theta)/S - 1] x1/p1}
/// with S the derived polynomial of {2,...,n} at theta_rest.
double conditional_lt_closed(const AffinePolynomial& p, double lambda,
                             double x1, std::span<const double> theta_rest);

/// Conditional Laplace transform of the exchangeable family given the first
/// k coordinates: a ratio of F_{k-1} values (k = 1 degenerates to the
/// closed exponential form).
SeriesValue conditional_lt_exchangeable(int n, double p, double lambda, int k,
                                        std::span<const double> x_head,
                                        std::span<const double> theta_tail,
                                        const SeriesParams& params = {});

}  // namespace mgamma
