#include "mgamma/markov.hpp"

#include <cmath>
#include <stdexcept>

namespace mgamma {

namespace {

// Determinant of the principal submatrix indexed by the set bits of mask,
// by Gaussian elimination with partial pivoting.
double principal_minor(const SquareMatrix& m, std::uint32_t mask) {
  std::vector<int> idx;
  for (int i = 0; i < m.n; ++i) {
    if ((mask >> i) & 1u) idx.push_back(i);
  }
  const int k = static_cast<int>(idx.size());
  if (k == 0) return 1.0;
  std::vector<double> a(static_cast<std::size_t>(k) * k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a[static_cast<std::size_t>(r) * k + c] = m.at(idx[r], idx[c]);
  }
  double det = 1.0;
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(a[static_cast<std::size_t>(r) * k + col]) >
          std::abs(a[static_cast<std::size_t>(pivot) * k + col])) {
        pivot = r;
      }
    }
    const double pv = a[static_cast<std::size_t>(pivot) * k + col];
    if (pv == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = col; c < k; ++c) {
        std::swap(a[static_cast<std::size_t>(pivot) * k + c],
                  a[static_cast<std::size_t>(col) * k + c]);
      }
      det = -det;
    }
    det *= pv;
    for (int r = col + 1; r < k; ++r) {
      const double f = a[static_cast<std::size_t>(r) * k + col] / pv;
      if (f == 0.0) continue;
      for (int c = col; c < k; ++c) {
        a[static_cast<std::size_t>(r) * k + c] -= f * a[static_cast<std::size_t>(col) * k + c];
      }
    }
  }
  return det;
}

}  // namespace

SquareMatrix markov_sqrt_matrix(std::span<const double> rho_chain) {
  const int n = static_cast<int>(rho_chain.size()) + 1;
  if (n < 2 || n > kMaxDimension) {
    throw std::invalid_argument("chain length out of range");
  }
  for (double rho : rho_chain) {
    if (!(rho > 0.0 && rho < 1.0)) {
      throw std::invalid_argument("chain correlations must lie in (0,1)");
    }
  }
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  for (int i = 0; i < n; ++i) {
    double prod = 1.0;
    for (int j = i + 1; j < n; ++j) {
      prod *= std::sqrt(rho_chain[j - 1]);
      m.at(i, j) = prod;
      m.at(j, i) = prod;
    }
  }
  return m;
}

AffinePolynomial markov_polynomial(const SquareMatrix& r_half,
                                   std::span<const double> scales) {
  const int n = r_half.n;
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("matrix dimension out of range");
  }
  for (int i = 0; i < n; ++i) {
    if (r_half.at(i, i) != 1.0) {
      throw std::invalid_argument("matrix must have unit diagonal");
    }
    for (int j = i + 1; j < n; ++j) {
      if (r_half.at(i, j) != r_half.at(j, i)) {
        throw std::invalid_argument("matrix must be symmetric");
      }
    }
  }
  if (!scales.empty() && static_cast<int>(scales.size()) != n) {
    throw std::invalid_argument("scales dimension mismatch");
  }
  std::vector<double> table(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    double value = principal_minor(r_half, mask);
    if (!scales.empty()) {
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) value *= scales[i];
      }
    }
    table[mask] = value;
  }
  return AffinePolynomial::from_dense(n, std::move(table));
}

}  // namespace mgamma
