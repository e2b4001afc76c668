#include "mgamma/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mgamma {

namespace {

bool is_nonpositive_integer(double a) {
  return a <= 0.0 && a == std::floor(a);
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Value with an extended binary exponent: the table factors of the
// multi-index series (powers, factorials, Pochhammers) overflow the double
// range long before the terms they combine into do.
struct ExtFloat {
  double mantissa = 0.0;  // signed, magnitude in [0.5, 1), or 0
  long exponent = 0;

  static ExtFloat from(double v) {
    ExtFloat out;
    if (v == 0.0) return out;
    int e = 0;
    out.mantissa = std::frexp(v, &e);
    out.exponent = e;
    return out;
  }

  ExtFloat times(const ExtFloat& o) const {
    return normalized(mantissa * o.mantissa, exponent + o.exponent);
  }
  ExtFloat over(const ExtFloat& o) const {
    return normalized(mantissa / o.mantissa, exponent - o.exponent);
  }
  double to_double() const {
    if (mantissa == 0.0) return 0.0;
    if (exponent > 1100) {
      return mantissa > 0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    }
    if (exponent < -1100) return 0.0;
    return std::ldexp(mantissa, static_cast<int>(exponent));
  }

 private:
  static ExtFloat normalized(double m, long e) {
    ExtFloat out;
    if (m == 0.0) return out;
    int shift = 0;
    out.mantissa = std::frexp(m, &shift);
    out.exponent = e + shift;
    return out;
  }
};

// Prefix table of (a)_k, grown on demand.
class PochhammerTable {
 public:
  explicit PochhammerTable(double a) : a_(a), values_{ExtFloat::from(1.0)} {}

  ExtFloat operator()(int k) {
    while (static_cast<int>(values_.size()) <= k) {
      const int m = static_cast<int>(values_.size()) - 1;
      values_.push_back(values_.back().times(ExtFloat::from(a_ + m)));
    }
    return values_[k];
  }

 private:
  double a_;
  std::vector<ExtFloat> values_;
};

class PowerTable {
 public:
  explicit PowerTable(double x) : x_(ExtFloat::from(x)), values_{ExtFloat::from(1.0)} {}

  ExtFloat operator()(int k) {
    while (static_cast<int>(values_.size()) <= k) {
      values_.push_back(values_.back().times(x_));
    }
    return values_[k];
  }

 private:
  ExtFloat x_;
  std::vector<ExtFloat> values_;
};

class FactorialTable {
 public:
  FactorialTable() : values_{ExtFloat::from(1.0)} {}

  ExtFloat operator()(int k) {
    while (static_cast<int>(values_.size()) <= k) {
      values_.push_back(values_.back().times(
          ExtFloat::from(static_cast<double>(values_.size()))));
    }
    return values_[k];
  }

 private:
  std::vector<ExtFloat> values_;
};

// Runs the shell loop: next_shell(d) must add the shell's terms to the sum
// and return the number of terms it added, writing the shell magnitude.
template <typename ShellFn>
SeriesValue run_shells(const SeriesParams& params, ShellFn&& next_shell) {
  KahanSum acc;
  SeriesValue out;
  for (int d = 0; d <= params.max_total_degree; ++d) {
    double shell_abs = 0.0;
    out.terms += next_shell(d, acc, shell_abs);
    if (out.terms > params.max_terms) {
      out.value = acc.sum;
      return out;  // budget exhausted, unconverged
    }
    if (d > 0 && shell_abs < params.tol * std::abs(acc.sum)) {
      out.value = acc.sum;
      out.converged = true;
      return out;
    }
  }
  out.value = acc.sum;
  return out;
}

}  // namespace

double pochhammer(double a, int k) {
  if (k < 0) throw std::invalid_argument("pochhammer needs k >= 0");
  double value = 1.0;
  for (int m = 0; m < k; ++m) value *= (a + m);
  return value;
}

SeriesValue hyp_pfq(std::span<const double> a, std::span<const double> b,
                    double z, const SeriesParams& params) {
  for (double bj : b) {
    if (is_nonpositive_integer(bj)) {
      throw std::domain_error("lower hypergeometric parameter is a nonpositive integer");
    }
  }
  double term = 1.0;
  int k = 0;
  return run_shells(params, [&](int d, KahanSum& acc, double& shell_abs) {
    (void)d;
    acc.add(term);
    shell_abs = std::abs(term);
    double ratio = z / (k + 1);
    for (double ai : a) ratio *= (ai + k);
    for (double bj : b) ratio /= (bj + k);
    term *= ratio;
    ++k;
    return std::size_t{1};
  });
}

SeriesValue horn_phi3(double a, double b, double x, double y,
                      const SeriesParams& params) {
  if (is_nonpositive_integer(b)) {
    throw std::domain_error("lower parameter is a nonpositive integer");
  }
  PochhammerTable pa(a), pb(b);
  PowerTable px(x), py(y);
  FactorialTable fact;
  return run_shells(params, [&](int d, KahanSum& acc, double& shell_abs) {
    std::size_t added = 0;
    for (int m = 0; m <= d; ++m) {
      const int n = d - m;
      const double term = pa(m).over(pb(d)).times(px(m)).times(py(n))
                              .over(fact(m)).over(fact(n)).to_double();
      acc.add(term);
      shell_abs += std::abs(term);
      ++added;
    }
    return added;
  });
}

SeriesValue lauricella_fi(double a, double b, double c, double z1, double z2,
                          double z3, const SeriesParams& params) {
  if (is_nonpositive_integer(a + c) || is_nonpositive_integer(b + c)) {
    throw std::domain_error("lower parameter is a nonpositive integer");
  }
  PochhammerTable pa(a), pb(b), pc(c), pac(a + c), pbc(b + c);
  PowerTable p1(z1), p2(z2), p3(z3);
  FactorialTable fact;
  return run_shells(params, [&](int d, KahanSum& acc, double& shell_abs) {
    std::size_t added = 0;
    for (int m1 = 0; m1 <= d; ++m1) {
      for (int m2 = 0; m2 + m1 <= d; ++m2) {
        const int m3 = d - m1 - m2;
        const double term = pa(m1).times(pb(m2)).times(pc(m3))
                                .over(pac(m1 + m3)).over(pbc(m2 + m3))
                                .times(p1(m1)).times(p2(m2)).times(p3(m3))
                                .over(fact(m1)).over(fact(m2)).over(fact(m3))
                                .to_double();
        acc.add(term);
        shell_abs += std::abs(term);
        ++added;
      }
    }
    return added;
  });
}

SeriesValue lauricella_fii(double l1, double l2, const std::array<double, 4>& z,
                           const SeriesParams& params) {
  if (is_nonpositive_integer(l1) || is_nonpositive_integer(l2)) {
    throw std::domain_error("lower parameter is a nonpositive integer");
  }
  PochhammerTable pl1(l1), pl2(l2);
  PowerTable p1(z[0]), p2(z[1]), p3(z[2]), p4(z[3]);
  FactorialTable fact;
  return run_shells(params, [&](int d, KahanSum& acc, double& shell_abs) {
    std::size_t added = 0;
    for (int m1 = 0; m1 <= d; ++m1) {
      for (int m2 = 0; m1 + m2 <= d; ++m2) {
        for (int m3 = 0; m1 + m2 + m3 <= d; ++m3) {
          const int m4 = d - m1 - m2 - m3;
          const double term = p1(m1).times(p2(m2)).times(p3(m3)).times(p4(m4))
                                  .over(pl1(m1 + m2 + m3))
                                  .over(pl2(2 * m1 + m2 + m4))
                                  .over(fact(m1)).over(fact(m2))
                                  .over(fact(m3)).over(fact(m4))
                                  .to_double();
          acc.add(term);
          shell_abs += std::abs(term);
          ++added;
        }
      }
    }
    return added;
  });
}

SeriesValue lauricella_1f3(double lambda, const std::array<double, 4>& z,
                           const SeriesParams& params) {
  if (is_nonpositive_integer(lambda)) {
    throw std::domain_error("lower parameter is a nonpositive integer");
  }
  PochhammerTable pl(lambda);
  PowerTable p1(z[0]), p2(z[1]), p3(z[2]), p4(z[3]);
  FactorialTable fact;
  return run_shells(params, [&](int d, KahanSum& acc, double& shell_abs) {
    std::size_t added = 0;
    for (int l1 = 0; l1 <= d; ++l1) {
      for (int l2 = 0; l1 + l2 <= d; ++l2) {
        for (int l3 = 0; l1 + l2 + l3 <= d; ++l3) {
          const int l4 = d - l1 - l2 - l3;
          const double term =
              pl(d).over(pl(l2 + l3 + l4)).over(pl(l1 + l3 + l4))
                  .over(pl(l1 + l2 + l4))
                  .times(p1(l1)).times(p2(l2)).times(p3(l3)).times(p4(l4))
                  .over(fact(l1)).over(fact(l2)).over(fact(l3)).over(fact(l4))
                  .to_double();
          acc.add(term);
          shell_abs += std::abs(term);
          ++added;
        }
      }
    }
    return added;
  });
}

double CoefficientExpansion::coeff(const MultiIndex& alpha) const {
  const auto it = coeff_.find(alpha);
  return it == coeff_.end() ? 0.0 : it->second;
}

void CoefficientExpansion::add(const MultiIndex& alpha, double value) {
  if (value == 0.0) return;
  coeff_[alpha] += value;
}

CoefficientExpansion c_alpha_expansion(const DualTables& tables, double lambda,
                                       int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  const int n = tables.n;

  // Monomials of R: exponent vector 1_T with coefficient r_T, |T| >= 2.
  struct Monomial {
    MultiIndex alpha;
    double coeff;
  };
  std::vector<Monomial> r_monomials;
  for (std::uint32_t mask = 1; mask < tables.remainder.size(); ++mask) {
    const double r = tables.remainder[mask];
    if (r == 0.0) continue;
    MultiIndex alpha;
    alpha.exponents.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) alpha.exponents[i] = 1;
    }
    if (alpha.total_degree() < 2) continue;
    r_monomials.push_back({std::move(alpha), r});
  }

  CoefficientExpansion out(n, degree);
  MultiIndex zero;
  zero.exponents.assign(n, 0);
  out.add(zero, 1.0);

  // power = R^k as a truncated sparse polynomial; every monomial of R has
  // total degree >= 2, so k runs to degree / 2 at most.
  std::map<MultiIndex, double> power;
  power.emplace(zero, 1.0);
  double weight = 1.0;  // (lambda)_k / k!
  for (int k = 1; 2 * k <= degree; ++k) {
    weight *= (lambda + (k - 1)) / k;
    std::map<MultiIndex, double> next;
    for (const auto& [alpha, value] : power) {
      for (const Monomial& mono : r_monomials) {
        MultiIndex sum = alpha;
        int total = 0;
        for (int i = 0; i < n; ++i) {
          sum.exponents[i] += mono.alpha.exponents[i];
          total += sum.exponents[i];
        }
        if (total > degree) continue;
        next[sum] += value * mono.coeff;
      }
    }
    power = std::move(next);
    if (power.empty()) break;
    for (const auto& [alpha, value] : power) {
      out.add(alpha, weight * value);
    }
  }
  return out;
}

double reg_lower_incomplete_gamma(double shape, double x) {
  if (!(shape > 0.0)) throw std::domain_error("shape must be positive");
  if (x < 0.0) throw std::domain_error("x must be nonnegative");
  if (x == 0.0) return 0.0;

  const double log_prefix = shape * std::log(x) - x - std::lgamma(shape);
  if (x < shape + 1.0) {
    // Series for P(shape, x).
    double term = 1.0 / shape;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
      term *= x / (shape + k);
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return std::exp(log_prefix) * sum;
  }
  // Continued fraction for Q(shape, x), modified Lentz.
  const double tiny = 1e-300;
  double b = x + 1.0 - shape;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - shape);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(log_prefix) * h;
  return 1.0 - q;
}

}  // namespace mgamma
