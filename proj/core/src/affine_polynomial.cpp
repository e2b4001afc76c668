#include "mgamma/affine_polynomial.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mgamma {

AffinePolynomial::AffinePolynomial(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("polynomial dimension out of range");
  }
  coeff_.assign(std::size_t{1} << n, 0.0);
  coeff_[0] = 1.0;
}

AffinePolynomial AffinePolynomial::from_dense(int n, std::vector<double> table) {
  AffinePolynomial p(n);
  if (table.size() != p.coeff_.size()) {
    throw std::invalid_argument("dense coefficient table has wrong size");
  }
  p.coeff_ = std::move(table);
  return p;
}

AffinePolynomial AffinePolynomial::independent(std::span<const double> scales) {
  const int n = static_cast<int>(scales.size());
  AffinePolynomial p(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) prod *= scales[i];
    }
    p.coeff_[mask] = prod;
  }
  return p;
}

AffinePolynomial AffinePolynomial::exchangeable(int n, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("exchangeable parameter must lie in (0,1)");
  }
  AffinePolynomial poly(n);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    poly.coeff_[mask] = std::pow(p, std::popcount(mask) - 1);
  }
  return poly;
}

double AffinePolynomial::coeff(SubsetIndex t) const {
  if (t.dimension() != n_) throw std::invalid_argument("subset dimension mismatch");
  return coeff_[t.bits()];
}

void AffinePolynomial::set_coeff(SubsetIndex t, double value) {
  if (t.dimension() != n_) throw std::invalid_argument("subset dimension mismatch");
  coeff_[t.bits()] = value;
}

double AffinePolynomial::operator()(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != n_) {
    throw std::invalid_argument("evaluation point has wrong dimension");
  }
  double sum = 0.0;
  for (std::uint32_t mask = 0; mask < coeff_.size(); ++mask) {
    double term = coeff_[mask];
    if (term == 0.0) continue;
    std::uint32_t rest = mask;
    while (rest) {
      const int i = std::countr_zero(rest);
      term *= theta[i];
      rest &= rest - 1;
    }
    sum += term;
  }
  return sum;
}

AffinePolynomial AffinePolynomial::restricted(SubsetIndex t) const {
  if (t.dimension() != n_) throw std::invalid_argument("subset dimension mismatch");
  if (t.is_empty()) throw std::invalid_argument("cannot restrict to the empty set");
  const std::vector<int> members = t.elements();
  const int m = static_cast<int>(members.size());
  std::vector<double> table(std::size_t{1} << m);
  for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
    std::uint32_t mask = 0;
    for (int j = 0; j < m; ++j) {
      if ((sub >> j) & 1u) mask |= 1u << (members[j] - 1);
    }
    table[sub] = coeff_[mask];
  }
  return from_dense(m, std::move(table));
}

AffinePolynomial AffinePolynomial::differentiated(SubsetIndex t) const {
  if (t.dimension() != n_) throw std::invalid_argument("subset dimension mismatch");
  AffinePolynomial out(n_);
  const std::uint32_t derived = t.bits();
  for (std::uint32_t mask = 0; mask < coeff_.size(); ++mask) {
    out.coeff_[mask] = (mask & derived) ? 0.0 : coeff_[mask | derived];
  }
  return out;
}

bool AffinePolynomial::has_zero_coeff() const {
  for (std::uint32_t mask = 1; mask < coeff_.size(); ++mask) {
    if (coeff_[mask] == 0.0) return true;
  }
  return false;
}

AffinePolynomial s_polynomial(const AffinePolynomial& p, SubsetIndex t) {
  if (t.dimension() != p.dimension()) {
    throw std::invalid_argument("subset dimension mismatch");
  }
  if (t.is_empty()) throw std::invalid_argument("derived polynomial needs nonempty T");
  if (p.has_zero_coeff()) {
    throw std::domain_error("derived polynomial requires all p_T != 0");
  }
  const SubsetIndex comp = t.complement();
  const double denom = comp.is_empty() ? 1.0 : p.coeff(comp);
  const std::vector<int> members = t.elements();
  const int m = static_cast<int>(members.size());
  std::vector<double> table(std::size_t{1} << m);
  for (std::uint32_t sub = 0; sub < (1u << m); ++sub) {
    std::uint32_t mask = comp.bits();
    for (int j = 0; j < m; ++j) {
      if ((sub >> j) & 1u) mask |= 1u << (members[j] - 1);
    }
    table[sub] = p.coeff_mask(mask) / denom;
  }
  return AffinePolynomial::from_dense(m, std::move(table));
}

}  // namespace mgamma
