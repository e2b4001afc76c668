#include "mgamma/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace mgamma {

namespace {

void check_scale_polynomial(const AffinePolynomial& p) {
  if (p.coeff_mask(0) != 1.0) {
    throw std::invalid_argument("scale polynomial must have constant term 1");
  }
}

}  // namespace

MgdSpec::MgdSpec(AffinePolynomial p, double shape)
    : poly(std::move(p)), lambda(shape) {
  check_scale_polynomial(poly);
  if (!(lambda > 0.0)) throw std::invalid_argument("shape must be positive");
}

MfgdSpec::MfgdSpec(AffinePolynomial p, double shape, std::vector<double> margins)
    : poly(std::move(p)), lambda(shape), margin_shapes(std::move(margins)) {
  check_scale_polynomial(poly);
  if (!(lambda > 0.0)) throw std::invalid_argument("shape must be positive");
  if (static_cast<int>(margin_shapes.size()) != poly.dimension()) {
    throw std::invalid_argument("margin shape count must equal the dimension");
  }
  for (double m : margin_shapes) {
    if (!(m >= lambda)) {
      throw std::invalid_argument("margin shapes must satisfy lambda_i >= lambda");
    }
  }
}

double laplace_transform(const MgdSpec& spec, std::span<const double> theta) {
  const double value = spec.poly(theta);
  if (!(value > 0.0)) {
    throw std::domain_error("Laplace transform base P(theta) must be positive");
  }
  return std::pow(value, -spec.lambda);
}

double laplace_transform(const MfgdSpec& spec, std::span<const double> theta) {
  const double value = spec.poly(theta);
  if (!(value > 0.0)) {
    throw std::domain_error("Laplace transform base P(theta) must be positive");
  }
  double result = std::pow(value, -spec.lambda);
  const int n = spec.dimension();
  for (int i = 0; i < n; ++i) {
    const double extra = spec.margin_shapes[i] - spec.lambda;
    if (extra == 0.0) continue;
    const double base = 1.0 + spec.poly.coeff(SubsetIndex::singleton(i + 1, n)) * theta[i];
    if (!(base > 0.0)) {
      throw std::domain_error("margin factor 1 + p_i theta_i must be positive");
    }
    result *= std::pow(base, -extra);
  }
  return result;
}

double Moments::correlation(int i, int j) const {
  return cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
}

namespace {

Moments moments_impl(const AffinePolynomial& poly, double lambda,
                     std::span<const double> margin_shapes) {
  const int n = poly.dimension();
  Moments out;
  out.mean.resize(n);
  out.covariance.assign(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> scales(n);
  for (int i = 0; i < n; ++i) {
    scales[i] = poly.coeff(SubsetIndex::singleton(i + 1, n));
  }
  for (int i = 0; i < n; ++i) {
    const double shape_i = margin_shapes.empty() ? lambda : margin_shapes[i];
    out.mean[i] = shape_i * scales[i];
    out.covariance[static_cast<std::size_t>(i) * n + i] = shape_i * scales[i] * scales[i];
    for (int j = i + 1; j < n; ++j) {
      const SubsetIndex pair =
          SubsetIndex::singleton(i + 1, n).set_union(SubsetIndex::singleton(j + 1, n));
      const double c = lambda * (scales[i] * scales[j] - poly.coeff(pair));
      out.covariance[static_cast<std::size_t>(i) * n + j] = c;
      out.covariance[static_cast<std::size_t>(j) * n + i] = c;
    }
  }
  return out;
}

}  // namespace

Moments moments(const MgdSpec& spec) {
  return moments_impl(spec.poly, spec.lambda, {});
}

Moments moments(const MfgdSpec& spec) {
  return moments_impl(spec.poly, spec.lambda, spec.margin_shapes);
}

}  // namespace mgamma
