#include "mgamma/sample.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mgamma/dual_tables.hpp"
#include "mgamma/markov.hpp"

namespace mgamma {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv_append(std::uint64_t& h, std::string_view text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
}

void fnv_append(std::uint64_t& h, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g;", value);
  fnv_append(h, buf);
}

void require_sampler_admissible(const AffinePolynomial& p) {
  if (p.has_zero_coeff()) {
    throw std::domain_error("sampler requires all p_T != 0");
  }
  const IdReport report = check_id(p);
  if (!report.boundary_ok()) {
    throw std::domain_error("sampler requires an infinitely divisible polynomial");
  }
}

// rates that are zero up to roundoff (boundary polynomials) become exact
// zeros; anything genuinely negative is a caller error
double clamp_rate(double a) {
  if (a >= 0.0) return a;
  if (a >= -1e-9) return 0.0;
  throw std::domain_error("negative mixture rate");
}

SampleBatch make_batch(int dim, std::size_t rows, std::string_view algorithm,
                       std::string fingerprint, const RngStream& rng) {
  SampleBatch batch;
  batch.dim = dim;
  batch.rows = rows;
  batch.data.assign(rows * static_cast<std::size_t>(dim), 0.0);
  batch.spec_fingerprint = std::move(fingerprint);
  batch.seed = rng.seed();
  batch.stream = rng.stream();
  batch.algorithm = std::string(algorithm);
  return batch;
}

// Bivariate conditional block: given a 2-variable scale polynomial
// (1, a, b, c) and a per-row shape, draws
//   x1 ~ gamma(a, shape); v ~ Poisson((c/a) * cpair * x1);
//   x2 ~ gamma(c/a, shape + v)
// where cpair = ab/c^2 - 1/c.
struct BivariateKernel {
  double scale1;
  double rate_per_x1;
  double scale2;

  explicit BivariateKernel(const AffinePolynomial& p2) {
    const double a = p2.coeff_mask(0b01);
    const double b = p2.coeff_mask(0b10);
    const double c = p2.coeff_mask(0b11);
    scale1 = a;
    scale2 = c / a;
    rate_per_x1 = clamp_rate((c / a) * (a * b / (c * c) - 1.0 / c));
  }

  std::array<double, 2> draw(double shape, RngStream& rng) const {
    const double x1 = rng.gamma(shape, scale1);
    const auto v = rng.poisson(rate_per_x1 * x1);
    const double x2 = rng.gamma(shape + static_cast<double>(v), scale2);
    return {x1, x2};
  }
};

// Trivariate conditional block, chained form (variant b): the (Z2,Z3) pair
// is produced by the bivariate recursion on the derived polynomial of {2,3},
// spelled out with the extra count V6 so every draw is univariate.
// Draw order per row: x1, V1..V5, Z2, V6, Y2, Y3, Z3.
struct TrivariateKernelB {
  AlphaTable3 alphas;
  double alpha6;
  double scale_x1;  // p1
  double scale_y2;  // p123/p13
  double scale_y3;  // p123/p12
  double scale_z2;  // p12/p1

  explicit TrivariateKernelB(const AffinePolynomial& p3) {
    const DualTables tables = dual_tables(p3);
    alphas = trivariate_alphas(p3);
    alpha6 = clamp_rate(tables.b_dual[0b110] / (-tables.dual[0b100]));
    scale_x1 = p3.coeff_mask(0b001);
    scale_y2 = 1.0 / (-tables.dual[0b010]);
    scale_y3 = 1.0 / (-tables.dual[0b100]);
    scale_z2 = p3.coeff_mask(0b011) / p3.coeff_mask(0b001);
  }

  std::array<double, 3> draw(double shape, RngStream& rng) const {
    const double x1 = rng.gamma(shape, scale_x1);
    std::array<double, 5> v{};
    for (int i = 0; i < 5; ++i) {
      v[i] = static_cast<double>(rng.poisson(alphas.alpha[i] * x1));
    }
    const double block_shape = shape + v[2] + v[3] + v[4];
    const double z2 = rng.gamma(block_shape, scale_z2);
    const double v6 = static_cast<double>(rng.poisson(alpha6 * z2));
    const double y2 = rng.gamma(v[0] + v[3], scale_y2);
    const double y3 = rng.gamma(v[1] + v[4], scale_y3);
    const double z3 = rng.gamma(block_shape + v6, scale_y3);
    return {x1, y2 + z2, y3 + z3};
  }
};

}  // namespace

const std::array<std::array<int, 3>, 5> kTrivariateWiring = {{
    {1, 0, 0},  // V1 -> S2
    {0, 1, 0},  // V2 -> S3
    {0, 0, 1},  // V3 -> S23
    {1, 0, 1},  // V4 -> S2 S23
    {0, 1, 1},  // V5 -> S3 S23
}};

const std::array<std::array<int, 7>, 40> kQuadrivariateWiring = {{
    // S2 S3 S4 S23 S24 S34 S234
    {1, 0, 0, 0, 0, 0, 0},  // V1
    {0, 1, 0, 0, 0, 0, 0},  // V2
    {0, 0, 1, 0, 0, 0, 0},  // V3
    {0, 0, 0, 1, 0, 0, 0},  // V4
    {0, 0, 0, 0, 1, 0, 0},  // V5
    {0, 0, 0, 0, 0, 1, 0},  // V6
    {1, 0, 0, 1, 0, 0, 0},  // V7
    {1, 0, 0, 0, 1, 0, 0},  // V8
    {0, 1, 0, 1, 0, 0, 0},  // V9
    {0, 1, 0, 0, 0, 1, 0},  // V10
    {0, 0, 1, 0, 1, 0, 0},  // V11
    {0, 0, 1, 0, 0, 1, 0},  // V12
    {0, 0, 0, 0, 0, 0, 1},  // V13
    {1, 0, 0, 0, 0, 0, 1},  // V14
    {0, 1, 0, 0, 0, 0, 1},  // V15
    {0, 0, 1, 0, 0, 0, 1},  // V16
    {2, 0, 0, 0, 0, 0, 1},  // V17
    {0, 2, 0, 0, 0, 0, 1},  // V18
    {0, 0, 2, 0, 0, 0, 1},  // V19
    {1, 1, 0, 0, 0, 0, 1},  // V20
    {1, 0, 1, 0, 0, 0, 1},  // V21
    {0, 1, 1, 0, 0, 0, 1},  // V22
    {0, 0, 0, 1, 0, 0, 1},  // V23
    {0, 0, 0, 0, 1, 0, 1},  // V24
    {0, 0, 0, 0, 0, 1, 1},  // V25
    {1, 0, 0, 1, 0, 0, 1},  // V26
    {1, 0, 0, 0, 1, 0, 1},  // V27
    {0, 1, 0, 1, 0, 0, 1},  // V28
    {0, 1, 0, 0, 0, 1, 1},  // V29
    {0, 0, 1, 0, 1, 0, 1},  // V30
    {0, 0, 1, 0, 0, 1, 1},  // V31
    {2, 0, 0, 1, 0, 0, 1},  // V32
    {2, 0, 0, 0, 1, 0, 1},  // V33
    {0, 2, 0, 1, 0, 0, 1},  // V34
    {0, 2, 0, 0, 0, 1, 1},  // V35
    {0, 0, 2, 0, 1, 0, 1},  // V36
    {0, 0, 2, 0, 0, 1, 1},  // V37
    {1, 1, 0, 1, 0, 0, 1},  // V38
    {1, 0, 1, 0, 1, 0, 1},  // V39
    {0, 1, 1, 0, 0, 1, 1},  // V40
}};

AlphaTable3 trivariate_alphas(const AffinePolynomial& p3) {
  if (p3.dimension() != 3) throw std::invalid_argument("needs dimension 3");
  require_sampler_admissible(p3);
  const DualTables t = dual_tables(p3);
  const auto b = [&](std::uint32_t mask) { return t.b_dual[mask]; };
  const auto m = [&](std::uint32_t mask) { return -t.dual[mask]; };
  AlphaTable3 out;
  out.alpha[0] = b(0b011) / m(0b010);
  out.alpha[1] = b(0b101) / m(0b100);
  out.alpha[2] = b(0b111) / m(0b110);
  out.alpha[3] = b(0b011) * b(0b110) / (m(0b010) * m(0b110));
  out.alpha[4] = b(0b101) * b(0b110) / (m(0b100) * m(0b110));
  for (double& a : out.alpha) a = clamp_rate(a);
  return out;
}

AlphaTable4 quadrivariate_alphas(const AffinePolynomial& p4) {
  if (p4.dimension() != 4) throw std::invalid_argument("needs dimension 4");
  require_sampler_admissible(p4);
  const DualTables t = dual_tables(p4);
  const auto b = [&](std::uint32_t mask) { return t.b_dual[mask]; };
  const auto m = [&](std::uint32_t mask) { return -t.dual[mask]; };

  // subset masks: elements 1..4 on bits 0..3
  constexpr std::uint32_t s2 = 0b0010, s3 = 0b0100, s4 = 0b1000;
  constexpr std::uint32_t s12 = 0b0011, s13 = 0b0101, s14 = 0b1001;
  constexpr std::uint32_t s23 = 0b0110, s24 = 0b1010, s34 = 0b1100;
  constexpr std::uint32_t s123 = 0b0111, s124 = 0b1011, s134 = 0b1101;
  constexpr std::uint32_t s234 = 0b1110, s1234 = 0b1111;

  AlphaTable4 out;
  auto& a = out.alpha;
  a[0] = b(s12) / m(s2);
  a[1] = b(s13) / m(s3);
  a[2] = b(s14) / m(s4);
  a[3] = b(s123) / m(s23);
  a[4] = b(s124) / m(s24);
  a[5] = b(s134) / m(s34);
  a[6] = b(s12) * b(s23) / (m(s2) * m(s23));
  a[7] = b(s12) * b(s24) / (m(s2) * m(s24));
  a[8] = b(s13) * b(s23) / (m(s3) * m(s23));
  a[9] = b(s13) * b(s34) / (m(s3) * m(s34));
  a[10] = b(s14) * b(s24) / (m(s4) * m(s24));
  a[11] = b(s14) * b(s34) / (m(s4) * m(s34));
  a[12] = b(s1234) / m(s234);
  a[13] = (b(s12) * b(s234) + b(s23) * b(s124) + b(s24) * b(s123)) /
          (m(s2) * m(s234));
  a[14] = (b(s13) * b(s234) + b(s23) * b(s134) + b(s34) * b(s123)) /
          (m(s3) * m(s234));
  a[15] = (b(s14) * b(s234) + b(s24) * b(s134) + b(s34) * b(s124)) /
          (m(s4) * m(s234));
  a[16] = 2.0 * b(s12) * b(s23) * b(s24) / (m(s2) * m(s2) * m(s234));
  a[17] = 2.0 * b(s13) * b(s23) * b(s34) / (m(s3) * m(s3) * m(s234));
  a[18] = 2.0 * b(s14) * b(s24) * b(s34) / (m(s4) * m(s4) * m(s234));
  a[19] = b(s23) * (b(s12) * b(s34) + b(s13) * b(s24)) /
          (m(s2) * m(s3) * m(s234));
  a[20] = b(s24) * (b(s12) * b(s34) + b(s14) * b(s23)) /
          (m(s2) * m(s4) * m(s234));
  a[21] = b(s34) * (b(s13) * b(s24) + b(s14) * b(s23)) /
          (m(s3) * m(s4) * m(s234));
  a[22] = b(s123) * b(s234) / (m(s23) * m(s234));
  a[23] = b(s124) * b(s234) / (m(s24) * m(s234));
  a[24] = b(s134) * b(s234) / (m(s34) * m(s234));
  a[25] = b(s23) * (b(s12) * b(s234) + b(s24) * b(s123)) /
          (m(s2) * m(s23) * m(s234));
  a[26] = b(s24) * (b(s12) * b(s234) + b(s23) * b(s124)) /
          (m(s2) * m(s24) * m(s234));
  a[27] = b(s23) * (b(s13) * b(s234) + b(s34) * b(s123)) /
          (m(s3) * m(s23) * m(s234));
  a[28] = b(s34) * (b(s13) * b(s234) + b(s23) * b(s134)) /
          (m(s3) * m(s34) * m(s234));
  a[29] = b(s24) * (b(s14) * b(s234) + b(s34) * b(s124)) /
          (m(s4) * m(s24) * m(s234));
  a[30] = b(s34) * (b(s14) * b(s234) + b(s24) * b(s134)) /
          (m(s4) * m(s34) * m(s234));
  a[31] = b(s12) * b(s23) * b(s23) * b(s24) /
          (m(s2) * m(s2) * m(s23) * m(s234));
  a[32] = b(s12) * b(s23) * b(s24) * b(s24) /
          (m(s2) * m(s2) * m(s24) * m(s234));
  a[33] = b(s13) * b(s23) * b(s23) * b(s34) /
          (m(s3) * m(s3) * m(s23) * m(s234));
  a[34] = b(s13) * b(s23) * b(s34) * b(s34) /
          (m(s3) * m(s3) * m(s34) * m(s234));
  a[35] = b(s14) * b(s34) * b(s24) * b(s24) /
          (m(s4) * m(s4) * m(s24) * m(s234));
  a[36] = b(s14) * b(s24) * b(s34) * b(s34) /
          (m(s4) * m(s4) * m(s34) * m(s234));
  a[37] = b(s23) * b(s23) * (b(s12) * b(s34) + b(s13) * b(s24)) /
          (m(s2) * m(s3) * m(s23) * m(s234));
  a[38] = b(s24) * b(s24) * (b(s12) * b(s34) + b(s14) * b(s23)) /
          (m(s2) * m(s4) * m(s24) * m(s234));
  a[39] = b(s34) * b(s34) * (b(s13) * b(s24) + b(s14) * b(s23)) /
          (m(s3) * m(s4) * m(s34) * m(s234));
  for (double& value : a) value = clamp_rate(value);
  return out;
}

SampleBatch sample_exchangeable(int n, double p, double lambda,
                                std::size_t count, RngStream& rng) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const AffinePolynomial poly = AffinePolynomial::exchangeable(n, p);
  const double shape_params[] = {lambda, p};
  SampleBatch batch = make_batch(
      n, count, "exchangeable",
      spec_fingerprint("exchangeable", poly, shape_params), rng);
  // The first coordinate carries the marginal scale of the family, which is
  // 1 (the linear coefficients of the exchangeable polynomial are all 1);
  // the remaining coordinates are conditionally i.i.d. with scale p.
  const double q = 1.0 - p;
  for (std::size_t r = 0; r < count; ++r) {
    double* row = batch.data.data() + r * static_cast<std::size_t>(n);
    const double x1 = rng.gamma(lambda, 1.0);
    row[0] = x1;
    const double v1 = static_cast<double>(rng.poisson(q / p * x1));
    for (int i = 1; i < n; ++i) row[i] = rng.gamma(lambda + v1, p);
  }
  return batch;
}

SampleBatch sample_bgd(const AffinePolynomial& p2, double lambda,
                       std::size_t count, RngStream& rng) {
  if (p2.dimension() != 2) throw std::invalid_argument("needs dimension 2");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  require_sampler_admissible(p2);
  const BivariateKernel kernel(p2);
  const double shape_params[] = {lambda};
  SampleBatch batch = make_batch(2, count, "bgd",
                                 spec_fingerprint("bgd", p2, shape_params), rng);
  for (std::size_t r = 0; r < count; ++r) {
    const auto xy = kernel.draw(lambda, rng);
    batch.data[2 * r] = xy[0];
    batch.data[2 * r + 1] = xy[1];
  }
  return batch;
}

SampleBatch sample_tgd(const AffinePolynomial& p3, double lambda,
                       std::size_t count, TgdVariant variant, RngStream& rng) {
  if (p3.dimension() != 3) throw std::invalid_argument("needs dimension 3");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  require_sampler_admissible(p3);
  const char* name = variant == TgdVariant::a ? "tgd-a" : "tgd-b";
  const double shape_params[] = {lambda};
  SampleBatch batch = make_batch(3, count, name,
                                 spec_fingerprint(name, p3, shape_params), rng);

  if (variant == TgdVariant::b) {
    const TrivariateKernelB kernel(p3);
    for (std::size_t r = 0; r < count; ++r) {
      const auto x = kernel.draw(lambda, rng);
      for (int j = 0; j < 3; ++j) batch.data[3 * r + j] = x[j];
    }
    return batch;
  }

  // variant a: joint (Z2,Z3) block through the bivariate kernel on the
  // derived polynomial of {2,3}. Draw order: x1, V1..V5, Y2, Y3, Z-block.
  const DualTables tables = dual_tables(p3);
  const AlphaTable3 alphas = trivariate_alphas(p3);
  const double scale_x1 = p3.coeff_mask(0b001);
  const double scale_y2 = 1.0 / (-tables.dual[0b010]);
  const double scale_y3 = 1.0 / (-tables.dual[0b100]);
  const BivariateKernel block(
      s_polynomial(p3, SubsetIndex::parse("2,3", 3)));
  for (std::size_t r = 0; r < count; ++r) {
    const double x1 = rng.gamma(lambda, scale_x1);
    std::array<double, 5> v{};
    for (int i = 0; i < 5; ++i) {
      v[i] = static_cast<double>(rng.poisson(alphas.alpha[i] * x1));
    }
    const double y2 = rng.gamma(v[0] + v[3], scale_y2);
    const double y3 = rng.gamma(v[1] + v[4], scale_y3);
    const auto z = block.draw(lambda + v[2] + v[3] + v[4], rng);
    batch.data[3 * r] = x1;
    batch.data[3 * r + 1] = y2 + z[0];
    batch.data[3 * r + 2] = y3 + z[1];
  }
  return batch;
}

SampleBatch sample_qgd(const AffinePolynomial& p4, double lambda,
                       std::size_t count, RngStream& rng) {
  if (p4.dimension() != 4) throw std::invalid_argument("needs dimension 4");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  require_sampler_admissible(p4);
  const DualTables tables = dual_tables(p4);
  const AlphaTable4 alphas = quadrivariate_alphas(p4);

  const double scale_x1 = p4.coeff_mask(0b0001);
  const double scale_y2 = 1.0 / (-tables.dual[0b0010]);
  const double scale_y3 = 1.0 / (-tables.dual[0b0100]);
  const double scale_y4 = 1.0 / (-tables.dual[0b1000]);
  const BivariateKernel block23(s_polynomial(p4, SubsetIndex::parse("2,3", 4)));
  const BivariateKernel block24(s_polynomial(p4, SubsetIndex::parse("2,4", 4)));
  const BivariateKernel block34(s_polynomial(p4, SubsetIndex::parse("3,4", 4)));
  const TrivariateKernelB block234(
      s_polynomial(p4, SubsetIndex::parse("2,3,4", 4)));

  const double shape_params[] = {lambda};
  SampleBatch batch = make_batch(4, count, "qgd",
                                 spec_fingerprint("qgd", p4, shape_params), rng);

  // Draw order per row: x1, V1..V40, Y2, Y3, Y4, pair blocks {2,3}, {2,4},
  // {3,4}, then the triple block.
  for (std::size_t r = 0; r < count; ++r) {
    const double x1 = rng.gamma(lambda, scale_x1);
    std::array<double, 7> z{};  // block shapes
    for (int i = 0; i < 40; ++i) {
      const double vi = static_cast<double>(rng.poisson(alphas.alpha[i] * x1));
      if (vi == 0.0) continue;
      for (int j = 0; j < 7; ++j) z[j] += kQuadrivariateWiring[i][j] * vi;
    }
    const double y2 = rng.gamma(z[0], scale_y2);
    const double y3 = rng.gamma(z[1], scale_y3);
    const double y4 = rng.gamma(z[2], scale_y4);
    const auto u23 = block23.draw(z[3], rng);
    const auto u24 = block24.draw(z[4], rng);
    const auto u34 = block34.draw(z[5], rng);
    const auto w = block234.draw(lambda + z[6], rng);
    batch.data[4 * r] = x1;
    batch.data[4 * r + 1] = y2 + u23[0] + u24[0] + w[0];
    batch.data[4 * r + 2] = y3 + u23[1] + u34[0] + w[1];
    batch.data[4 * r + 3] = y4 + u24[1] + u34[1] + w[2];
  }
  return batch;
}

SampleBatch sample_markov(std::span<const double> rho_chain, double lambda,
                          std::size_t count, std::span<const double> scales,
                          RngStream& rng) {
  const int n = static_cast<int>(rho_chain.size()) + 1;
  if (n < 2 || n > kMaxDimension) {
    throw std::invalid_argument("chain length out of range");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  for (double rho : rho_chain) {
    if (!(rho > 0.0 && rho < 1.0)) {
      throw std::invalid_argument("chain correlations must lie in (0,1)");
    }
  }
  if (!scales.empty()) {
    if (static_cast<int>(scales.size()) != n) {
      throw std::invalid_argument("scales dimension mismatch");
    }
    for (double s : scales) {
      if (!(s > 0.0)) throw std::invalid_argument("scales must be positive");
    }
  }

  // fingerprint over the expanded polynomial so the batch ties to the same
  // spec a file-based run would use
  const AffinePolynomial poly = markov_polynomial(markov_sqrt_matrix(rho_chain), scales);
  std::vector<double> shape_params;
  shape_params.push_back(lambda);
  SampleBatch batch = make_batch(
      n, count, "markov", spec_fingerprint("markov", poly, shape_params), rng);

  std::vector<double> x(n);
  for (std::size_t r = 0; r < count; ++r) {
    x[0] = rng.gamma(lambda, 1.0);
    for (int i = 0; i + 1 < n; ++i) {
      const double rho = rho_chain[i];
      const double v =
          static_cast<double>(rng.poisson(rho / (1.0 - rho) * x[i]));
      x[i + 1] = rng.gamma(lambda + v, 1.0 - rho);
    }
    double* row = batch.data.data() + r * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      row[i] = scales.empty() ? x[i] : scales[i] * x[i];
    }
  }
  return batch;
}

MgdSampler default_mgd_sampler() {
  return [](const AffinePolynomial& poly, double lambda, std::size_t count,
            RngStream& rng) {
    switch (poly.dimension()) {
      case 2:
        return sample_bgd(poly, lambda, count, rng);
      case 3:
        return sample_tgd(poly, lambda, count, TgdVariant::a, rng);
      case 4:
        return sample_qgd(poly, lambda, count, rng);
      default:
        throw std::invalid_argument(
            "no general mgd sampler for this dimension; use the chain or "
            "exchangeable samplers");
    }
  };
}

SampleBatch sample_mfgd(const MfgdSpec& spec, std::size_t count, RngStream& rng,
                        const MgdSampler& base) {
  const int n = spec.dimension();
  SampleBatch batch = base(spec.poly, spec.lambda, count, rng);
  std::vector<double> shape_params;
  shape_params.push_back(spec.lambda);
  shape_params.insert(shape_params.end(), spec.margin_shapes.begin(),
                      spec.margin_shapes.end());
  batch.algorithm = "mfgd(" + batch.algorithm + ")";
  batch.spec_fingerprint =
      spec_fingerprint(batch.algorithm, spec.poly, shape_params);
  for (std::size_t r = 0; r < count; ++r) {
    double* row = batch.data.data() + r * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
      const double extra = spec.margin_shapes[i] - spec.lambda;
      const double scale = spec.poly.coeff(SubsetIndex::singleton(i + 1, n));
      row[i] += rng.gamma(extra, scale);
    }
  }
  return batch;
}

std::string spec_fingerprint(std::string_view algorithm,
                             const AffinePolynomial& poly,
                             std::span<const double> shape_params) {
  std::uint64_t h = kFnvOffset;
  fnv_append(h, algorithm);
  fnv_append(h, ";n=");
  fnv_append(h, static_cast<double>(poly.dimension()));
  for (std::size_t mask = 0; mask < poly.table_size(); ++mask) {
    fnv_append(h, poly.coeff_mask(static_cast<std::uint32_t>(mask)));
  }
  fnv_append(h, ";shapes=");
  for (double s : shape_params) fnv_append(h, s);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mgamma
