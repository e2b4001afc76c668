#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mgamma/density.hpp"
#include "mgamma/sample.hpp"

namespace mgamma {

/// One executed check. expect_fail marks a designed-to-fail negative
/// control: it contributes to the overall verdict by failing.
struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool expect_fail = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool overall_pass = false;

  /// all regular checks passed, every negative control failed, and at
  /// least one negative control ran (guards against vacuous passes)
  void finalize();
};

struct EmpiricalMoments {
  std::vector<double> mean;
  std::vector<double> covariance;   // row-major n x n, unbiased
  std::vector<double> correlation;  // row-major n x n, NaN where undefined
  bool correlation_defined = true;

  double corr(int i, int j) const;
  double cov(int i, int j) const {
    return covariance[static_cast<std::size_t>(i) * mean.size() + j];
  }
};

/// Unbiased mean/covariance and the derived correlation matrix. Constant
/// columns flag correlation_defined = false. Needs at least two rows.
EmpiricalMoments empirical_moments(const SampleBatch& batch);

/// Compares the empirical Laplace transform mean of exp(-<theta,X>) with the
/// analytic value at each theta: pass iff |z| < 3 where z is the CLT score.
std::vector<CheckResult> lt_check(const SampleBatch& batch, const MgdSpec& spec,
                                  const std::vector<std::vector<double>>& thetas);
std::vector<CheckResult> lt_check(const SampleBatch& batch, const MfgdSpec& spec,
                                  const std::vector<std::vector<double>>& thetas);

/// Kolmogorov-Smirnov test of column i against the gamma CDF with the given
/// scale and shape, at the asymptotic 1% critical value 1.63/sqrt(N).
CheckResult marginal_gof(const SampleBatch& batch, int column, double scale,
                         double shape);

/// Cell layout of the 2-D histogram check: bins_per_axis^2 equal cells on
/// [0,upper1] x [0,upper2]; everything beyond is pooled into a tail cell.
struct Grid2d {
  int bins_per_axis = 20;
  double upper1 = 1.0;
  double upper2 = 1.0;
};

/// Chi-square of the 2-D histogram against cell probabilities approximated
/// by a composite midpoint rule (density averaged over an 8x8 lattice per
/// cell, times area); cells with expected count < 5 are pooled. Pass at the
/// 1% level.
CheckResult density_check_2d(const SampleBatch& batch,
                             const std::function<double(std::span<const double>)>& pdf,
                             const Grid2d& grid);

/// Quantile of the chi-square distribution (used by density_check_2d).
double chi_square_quantile(double prob, int dof);

/// One fixture of the validation suite. Exactly one of the payloads is
/// active depending on algo.
struct FixtureConfig {
  std::string name;
  std::string algo;  // exchangeable | bgd | tgd-a | tgd-b | qgd | markov | mfgd
  double lambda = 1.0;
  std::optional<AffinePolynomial> poly;     // bgd / tgd / qgd / mfgd
  std::vector<double> margin_shapes;        // mfgd
  std::vector<double> rho;                  // markov
  std::vector<double> scales;               // markov, optional
  double p = 0.5;                           // exchangeable
  int n = 2;                                // exchangeable
};

struct ValidationConfig {
  std::uint64_t seed = 20250805;
  std::size_t samples = 200'000;
  bool negative_controls = true;
  bool density_checks = true;
  /// absolute band for the correlation checks; 0 scales the 0.01-at-200k
  /// default with 1/sqrt(samples)
  double corr_tolerance = 0.0;
  std::vector<FixtureConfig> fixtures;
};

/// All simulation-section fixtures: the two bivariate polynomials and their
/// multifactor variants, the trivariate pair, the symmetric and general
/// quadrivariate cases, the five-dimensional chain, and an exchangeable
/// family.
ValidationConfig default_validation_config(bool quick = false);

/// Runs every fixture: divisibility, moment agreement, Laplace-transform
/// law checks, per-coordinate marginal fit, the bivariate density
/// chi-square, and the negative controls. Deterministic given the config.
ValidationReport run_suite(const ValidationConfig& config);

}  // namespace mgamma
