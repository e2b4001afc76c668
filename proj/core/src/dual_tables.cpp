#include "mgamma/dual_tables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mgamma {

namespace {

// w[S] = sum_k (k-1)! sum over partitions of S into k blocks of the product
// of table[] over the blocks. Partitions are enumerated explicitly by
// peeling the block that contains the least remaining element; Bell numbers
// stay small in this library's regime (n typically <= 5).
std::vector<double> partition_sum(int n, const std::vector<double>& table) {
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<double> w(std::size_t{1} << n, 0.0);
  double product = 1.0;

  auto recurse = [&](auto&& self, std::uint32_t rest, std::uint32_t root,
                     int blocks) -> void {
    if (rest == 0) {
      double fact = 1.0;
      for (int k = 2; k < blocks; ++k) fact *= k;  // (blocks-1)!
      w[root] += fact * product;
      return;
    }
    const std::uint32_t low = rest & (~rest + 1u);  // bit of least element
    const std::uint32_t others = rest ^ low;
    // enumerate subsets B of rest containing the least element
    std::uint32_t sub = others;
    while (true) {
      const std::uint32_t block = sub | low;
      const double saved = product;
      product *= table[block];
      self(self, rest ^ block, root, blocks + 1);
      product = saved;
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  };

  for (std::uint32_t s = 1; s <= full; ++s) {
    recurse(recurse, s, s, 0);
  }
  return w;
}

}  // namespace

DualTables dual_tables(const AffinePolynomial& p) {
  const int n = p.dimension();
  const double top = p.top_coeff();
  if (top == 0.0) {
    throw std::domain_error("dual tables require p_{[n]} != 0");
  }
  DualTables out;
  out.n = n;
  const std::uint32_t full = (1u << n) - 1u;
  out.dual.resize(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    out.dual[mask] = -p.coeff_mask(full ^ mask) / top;
  }
  out.tilt.resize(n);
  for (int i = 0; i < n; ++i) out.tilt[i] = out.dual[1u << i];

  std::vector<double> ptable(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask <= full; ++mask) ptable[mask] = p.coeff_mask(mask);
  out.b = partition_sum(n, ptable);
  out.b_dual = partition_sum(n, out.dual);

  out.remainder.assign(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int card = std::popcount(mask);
    if (card < 2) continue;
    if (card == 2 || card == 3) {
      out.remainder[mask] = out.b_dual[mask];
    } else if (card == 4 || card == 5) {
      // b_dual[T] minus the (2,2) respectively (3,2) two-block corrections
      const SubsetIndex t(mask, n);
      double corr = 0.0;
      for (const Partition& part : partitions_into_k(t, 2)) {
        const int c0 = part.blocks[0].cardinality();
        const int c1 = part.blocks[1].cardinality();
        const bool wanted =
            card == 4 ? (c0 == 2 && c1 == 2)
                      : ((c0 == 3 && c1 == 2) || (c0 == 2 && c1 == 3));
        if (wanted) {
          corr += out.b_dual[part.blocks[0].bits()] *
                  out.b_dual[part.blocks[1].bits()];
        }
      }
      out.remainder[mask] = out.b_dual[mask] - corr;
    } else {
      out.remainder[mask] = remainder_by_derivative(p, SubsetIndex(mask, n));
    }
  }
  return out;
}

double remainder_by_derivative(const AffinePolynomial& p, SubsetIndex t) {
  if (t.cardinality() < 2) {
    throw std::invalid_argument("remainder coefficients need |T| >= 2");
  }
  const double top = p.top_coeff();
  if (top == 0.0) throw std::domain_error("requires p_{[n]} != 0");
  const int n = p.dimension();
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<double> tilt(n);
  for (int i = 0; i < n; ++i) tilt[i] = -p.coeff_mask(full ^ (1u << i)) / top;
  const AffinePolynomial deriv = p.differentiated(t.complement());
  return -deriv(tilt) / top;
}

bool IdReport::boundary_ok() const {
  if (is_id) return true;
  for (const IdFailure& f : failures) {
    if (f.kind != IdFailure::Kind::b_dual_sign || !f.borderline) return false;
  }
  return true;
}

IdReport check_id(const AffinePolynomial& p, double tol) {
  constexpr double kBorderline = 1e-12;
  const int n = p.dimension();
  IdReport report;
  report.is_id = true;

  auto fail = [&](SubsetIndex s, double value, IdFailure::Kind kind,
                  bool borderline = false) {
    report.is_id = false;
    report.failures.push_back({s, value, kind, borderline});
  };

  if (p.coeff_mask(0) != 1.0) {
    fail(SubsetIndex::empty(n), p.coeff_mask(0), IdFailure::Kind::hypothesis);
  }
  for (int i = 1; i <= n; ++i) {
    const SubsetIndex s = SubsetIndex::singleton(i, n);
    if (!(p.coeff(s) > 0.0)) fail(s, p.coeff(s), IdFailure::Kind::hypothesis);
  }
  if (!(p.top_coeff() > 0.0)) {
    fail(SubsetIndex::full(n), p.top_coeff(), IdFailure::Kind::hypothesis);
  }
  if (!report.is_id) return report;  // tables below would divide by p_{[n]}

  const DualTables tables = dual_tables(p);
  for (int i = 1; i <= n; ++i) {
    const SubsetIndex s = SubsetIndex::singleton(i, n);
    const double d = tables.dual_of(s);
    if (!(d < 0.0)) fail(s, d, IdFailure::Kind::dual_sign);
  }
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) < 2) continue;
    const double value = tables.b_dual[mask];
    if (value < -tol) {
      fail(SubsetIndex(mask, n), value, IdFailure::Kind::b_dual_sign,
           value >= -kBorderline);
    }
  }
  return report;
}

}  // namespace mgamma
