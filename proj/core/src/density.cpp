#include "mgamma/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgamma/dual_tables.hpp"

namespace mgamma {

namespace {

bool in_open_orthant(std::span<const double> x) {
  for (double v : x) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

void require_dimension(const AffinePolynomial& p, int n) {
  if (p.dimension() != n) {
    throw std::invalid_argument("polynomial has wrong dimension");
  }
}

void require_id(const AffinePolynomial& p) {
  const IdReport report = check_id(p);
  if (!report.boundary_ok()) {
    throw std::domain_error("polynomial is not infinitely divisible");
  }
}

}  // namespace

SeriesValue pdf_bgd(const AffinePolynomial& p2, double lambda,
                    std::span<const double> x, const SeriesParams& params) {
  require_dimension(p2, 2);
  require_id(p2);
  if (x.size() != 2) throw std::invalid_argument("x must have 2 coordinates");
  if (!in_open_orthant(x)) return {0.0, true, 0};

  const double p1 = p2.coeff_mask(0b01);
  const double q2 = p2.coeff_mask(0b10);
  const double p12 = p2.coeff_mask(0b11);
  const double c = p1 * q2 / (p12 * p12) - 1.0 / p12;  // pair dual coefficient

  const double log_pre = -lambda * std::log(p12) - 2.0 * std::lgamma(lambda) -
                         (q2 / p12) * x[0] - (p1 / p12) * x[1] +
                         (lambda - 1.0) * (std::log(x[0]) + std::log(x[1]));
  const double lam[1] = {lambda};
  const SeriesValue f = hyp_pfq({}, lam, c * x[0] * x[1], params);
  return {std::exp(log_pre) * f.value, f.converged, f.terms};
}

SeriesValue pdf_multisensor(const AffinePolynomial& p2, double lambda,
                            double lambda2, std::span<const double> x,
                            const SeriesParams& params) {
  require_dimension(p2, 2);
  require_id(p2);
  if (!(lambda2 >= lambda)) throw std::invalid_argument("lambda2 must be >= lambda");
  if (x.size() != 2) throw std::invalid_argument("x must have 2 coordinates");
  if (!in_open_orthant(x)) return {0.0, true, 0};

  const double p1 = p2.coeff_mask(0b01);
  const double q2 = p2.coeff_mask(0b10);
  const double p12 = p2.coeff_mask(0b11);
  const double c = p1 * q2 / (p12 * p12) - 1.0 / p12;

  const double log_pre = -lambda * std::log(p12) -
                         (lambda2 - lambda) * std::log(q2) -
                         std::lgamma(lambda) - std::lgamma(lambda2) -
                         (q2 / p12) * x[0] - (p1 / p12) * x[1] +
                         (lambda - 1.0) * std::log(x[0]) +
                         (lambda2 - 1.0) * std::log(x[1]);
  const SeriesValue f = horn_phi3(lambda2 - lambda, lambda2,
                                  c * (p12 / q2) * x[1], c * x[0] * x[1], params);
  return {std::exp(log_pre) * f.value, f.converged, f.terms};
}

SeriesValue pdf_bivariate_mfgd(const AffinePolynomial& p2, double lambda,
                               double lambda1, double lambda2,
                               std::span<const double> x,
                               const SeriesParams& params) {
  require_dimension(p2, 2);
  require_id(p2);
  if (!(lambda1 >= lambda) || !(lambda2 >= lambda)) {
    throw std::invalid_argument("margin shapes must be >= lambda");
  }
  if (x.size() != 2) throw std::invalid_argument("x must have 2 coordinates");
  if (!in_open_orthant(x)) return {0.0, true, 0};

  const double p1 = p2.coeff_mask(0b01);
  const double q2 = p2.coeff_mask(0b10);
  const double p12 = p2.coeff_mask(0b11);
  const double c = p1 * q2 / (p12 * p12) - 1.0 / p12;

  const double log_pre = -lambda * std::log(p12) -
                         (lambda1 - lambda) * std::log(p1) -
                         (lambda2 - lambda) * std::log(q2) -
                         std::lgamma(lambda1) - std::lgamma(lambda2) -
                         (q2 / p12) * x[0] - (p1 / p12) * x[1] +
                         (lambda1 - 1.0) * std::log(x[0]) +
                         (lambda2 - 1.0) * std::log(x[1]);
  // Both margin arguments carry the factor c, like the cross argument; the
  // lambda1 = lambda case must collapse onto the one-margin series.
  const SeriesValue f =
      lauricella_fi(lambda1 - lambda, lambda2 - lambda, lambda,
                    c * (p12 / p1) * x[0], c * (p12 / q2) * x[1],
                    c * x[0] * x[1], params);
  return {std::exp(log_pre) * f.value, f.converged, f.terms};
}

SeriesValue pdf_tgd(const AffinePolynomial& p3, double lambda,
                    std::span<const double> x, const SeriesParams& params) {
  require_dimension(p3, 3);
  require_id(p3);
  if (x.size() != 3) throw std::invalid_argument("x must have 3 coordinates");
  if (!in_open_orthant(x)) return {0.0, true, 0};

  const DualTables tables = dual_tables(p3);
  const double log_pre = -lambda * std::log(p3.top_coeff()) -
                         3.0 * std::lgamma(lambda) +
                         tables.tilt[0] * x[0] + tables.tilt[1] * x[1] +
                         tables.tilt[2] * x[2] +
                         (lambda - 1.0) *
                             (std::log(x[0]) + std::log(x[1]) + std::log(x[2]));
  const std::array<double, 4> z = {
      tables.b_dual[0b011] * x[0] * x[1],
      tables.b_dual[0b101] * x[0] * x[2],
      tables.b_dual[0b110] * x[1] * x[2],
      tables.b_dual[0b111] * x[0] * x[1] * x[2],
  };
  const SeriesValue f = lauricella_1f3(lambda, z, params);
  return {std::exp(log_pre) * f.value, f.converged, f.terms};
}

SeriesValue pdf_exchangeable(int n, double p, double lambda,
                             std::span<const double> x,
                             const SeriesParams& params) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("x has wrong dimension");
  }
  if (!in_open_orthant(x)) return {0.0, true, 0};

  const double q = 1.0 - p;
  double sum_x = 0.0, sum_log = 0.0, prod_x = 1.0;
  for (double v : x) {
    sum_x += v;
    sum_log += std::log(v);
    prod_x *= v;
  }
  const double log_pre = -(n - 1) * lambda * std::log(p) -
                         n * std::lgamma(lambda) - sum_x / p +
                         (lambda - 1.0) * sum_log;
  const std::vector<double> lower(static_cast<std::size_t>(n) - 1, lambda);
  const SeriesValue f =
      hyp_pfq({}, lower, q * std::pow(p, -n) * prod_x, params);
  return {std::exp(log_pre) * f.value, f.converged, f.terms};
}

GeneralDensity::GeneralDensity(const MgdSpec& spec, int degree,
                               const SeriesParams& params)
    : n_(spec.dimension()),
      lambda_(spec.lambda),
      params_(params),
      expansion_(n_, degree) {
  require_id(spec.poly);
  const DualTables tables = dual_tables(spec.poly);
  tilt_ = tables.tilt;
  log_norm_ = -lambda_ * std::log(spec.poly.top_coeff()) -
              n_ * std::lgamma(lambda_);
  expansion_ = c_alpha_expansion(tables, lambda_, degree);
  shells_.assign(static_cast<std::size_t>(degree) + 1, {});
  for (const auto& [alpha, value] : expansion_.nonzero()) {
    double pois = 1.0;
    for (int e : alpha.exponents) pois *= pochhammer(lambda_, e);
    shells_[alpha.total_degree()].push_back({alpha.exponents, value / pois});
  }
}

SeriesValue GeneralDensity::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw std::invalid_argument("x has wrong dimension");
  }
  if (!in_open_orthant(x)) return {0.0, true, 0};

  double log_pre = log_norm_;
  for (int i = 0; i < n_; ++i) {
    log_pre += tilt_[i] * x[i] + (lambda_ - 1.0) * std::log(x[i]);
  }
  std::vector<std::vector<double>> powers(n_);
  for (int i = 0; i < n_; ++i) {
    powers[i].resize(shells_.size());
    powers[i][0] = 1.0;
    for (std::size_t k = 1; k < shells_.size(); ++k) {
      powers[i][k] = powers[i][k - 1] * x[i];
    }
  }
  double sum = 0.0;
  std::size_t terms = 0;
  bool converged = false;
  // convergence is judged on populated shells only: the expansion is sparse
  // (no |alpha| = 1 terms ever, and special patterns skip whole degrees), so
  // an empty shell says nothing about the tail
  std::size_t last_populated = 0;
  for (std::size_t d = 0; d < shells_.size(); ++d) {
    if (!shells_[d].empty()) last_populated = d;
  }
  for (std::size_t d = 0; d <= last_populated; ++d) {
    double shell = 0.0;
    for (const Term& term : shells_[d]) {
      double v = term.value;
      for (int i = 0; i < n_; ++i) v *= powers[i][term.alpha[i]];
      shell += v;
      ++terms;
    }
    sum += shell;
    if (d > 0 && !shells_[d].empty() &&
        std::abs(shell) < params_.tol * std::abs(sum)) {
      converged = true;
      break;
    }
  }
  // a remainder polynomial of zero leaves only the constant shell, which is
  // exact rather than truncated
  if (last_populated == 0) converged = true;
  return {std::exp(log_pre) * sum, converged, terms};
}

SeriesValue pdf_general(const MgdSpec& spec, std::span<const double> x,
                        const SeriesParams& params) {
  const int degree = std::min(params.max_total_degree, 64);
  return GeneralDensity(spec, degree, params)(x);
}

double conditional_lt_closed(const AffinePolynomial& p, double lambda,
                             double x1, std::span<const double> theta_rest) {
  const int n = p.dimension();
  if (n < 2) throw std::invalid_argument("needs dimension >= 2");
  if (static_cast<int>(theta_rest.size()) != n - 1) {
    throw std::invalid_argument("theta_rest must have n-1 coordinates");
  }
  const SubsetIndex tail = SubsetIndex::full(n).set_minus(SubsetIndex::singleton(1, n));
  const AffinePolynomial s = s_polynomial(p, tail);
  const double s_value = s(theta_rest);
  if (!(s_value > 0.0)) {
    throw std::domain_error("derived polynomial must be positive at theta");
  }
  std::vector<double> theta_full(n, 0.0);
  for (int i = 1; i < n; ++i) theta_full[i] = theta_rest[i - 1];
  const double p_value = p(theta_full);
  const double p1 = p.coeff(SubsetIndex::singleton(1, n));
  return std::pow(s_value, -lambda) *
         std::exp(-(p_value / s_value - 1.0) * x1 / p1);
}

SeriesValue conditional_lt_exchangeable(int n, double p, double lambda, int k,
                                        std::span<const double> x_head,
                                        std::span<const double> theta_tail,
                                        const SeriesParams& params) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (k < 1 || k >= n) throw std::invalid_argument("k must satisfy 1 <= k < n");
  if (static_cast<int>(x_head.size()) != k ||
      static_cast<int>(theta_tail.size()) != n - k) {
    throw std::invalid_argument("conditioning block sizes are inconsistent");
  }
  const double q = 1.0 - p;
  double prod_x = 1.0;
  for (double v : x_head) prod_x *= v;
  double tail_prod = 1.0;
  for (double t : theta_tail) {
    const double factor = 1.0 + p * t;
    if (!(factor > 0.0)) throw std::domain_error("1 + p theta must be positive");
    tail_prod *= factor;
  }
  const double arg = q * std::pow(p, -k) * prod_x;
  const double outer = std::pow(tail_prod, -lambda);
  if (k == 1) {
    return {outer * std::exp(arg * (1.0 / tail_prod - 1.0)), true, 1};
  }
  const std::vector<double> lower(static_cast<std::size_t>(k) - 1, lambda);
  const SeriesValue numer = hyp_pfq({}, lower, arg / tail_prod, params);
  const SeriesValue denom = hyp_pfq({}, lower, arg, params);
  return {outer * numer.value / denom.value, numer.converged && denom.converged,
          numer.terms + denom.terms};
}

}  // namespace mgamma
