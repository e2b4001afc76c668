#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgamma/distribution.hpp"
#include "mgamma/rng.hpp"

namespace mgamma {

/// A sampled N x n matrix plus the provenance needed to reproduce it.
struct SampleBatch {
  int dim = 0;
  std::size_t rows = 0;
  std::vector<double> data;  // row-major
  std::string spec_fingerprint;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string algorithm;

  double at(std::size_t r, int j) const {
    return data[r * static_cast<std::size_t>(dim) + j];
  }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * static_cast<std::size_t>(dim),
            static_cast<std::size_t>(dim)};
  }
};

/// Poisson rates (per unit of the first coordinate) of the trivariate
/// mixture; all entries are >= 0 for an infinitely divisible polynomial.
struct AlphaTable3 {
  std::array<double, 5> alpha{};
};

/// The forty Poisson rates of the quadrivariate mixture.
struct AlphaTable4 {
  std::array<double, 40> alpha{};
};

/// Exponent with which count i feeds each conditional block, blocks ordered
/// (S2, S3, S23): block shapes are lambda-free sums z_j = sum_i w[i][j] V_i
/// except the last block, whose shape gains the base lambda.
extern const std::array<std::array<int, 3>, 5> kTrivariateWiring;

/// Same for the quadrivariate mixture, blocks ordered
/// (S2, S3, S4, S23, S24, S34, S234).
extern const std::array<std::array<int, 7>, 40> kQuadrivariateWiring;

AlphaTable3 trivariate_alphas(const AffinePolynomial& p3);
AlphaTable4 quadrivariate_alphas(const AffinePolynomial& p4);

/// One-Poisson-layer sampler of the exchangeable family
/// (coefficients p^{|T|-1}): X1 gamma, one Poisson count, the remaining
/// coordinates i.i.d. gamma with boosted shape.
SampleBatch sample_exchangeable(int n, double p, double lambda,
                                std::size_t count, RngStream& rng);

/// Bivariate sampler: X1 ~ gamma(p1, lambda), V ~ Poisson((p12/p1) c X1)
/// with c the pair dual coefficient, X2 ~ gamma(p12/p1, lambda + V).
SampleBatch sample_bgd(const AffinePolynomial& p2, double lambda,
                       std::size_t count, RngStream& rng);

/// Trivariate sampler. Variant a draws the (Z2,Z3) block through the
/// bivariate kernel on the derived polynomial of {2,3}; variant b chains
/// purely univariate draws with the extra count V6. Same law either way.
enum class TgdVariant { a, b };
SampleBatch sample_tgd(const AffinePolynomial& p3, double lambda,
                       std::size_t count, TgdVariant variant, RngStream& rng);

/// Quadrivariate sampler: forty Poisson counts feed three univariate, three
/// bivariate and one trivariate conditional block, which are summed
/// per coordinate.
SampleBatch sample_qgd(const AffinePolynomial& p4, double lambda,
                       std::size_t count, RngStream& rng);

/// First-order chain sampler for any dimension: X1 ~ gamma(1, lambda), then
/// X_{i+1} ~ gamma(1 - rho_i, lambda + Poisson(rho_i/(1-rho_i) X_i)).
/// Optional per-axis scales multiply coordinate i by scales[i].
SampleBatch sample_markov(std::span<const double> rho_chain, double lambda,
                          std::size_t count, std::span<const double> scales,
                          RngStream& rng);

using MgdSampler = std::function<SampleBatch(
    const AffinePolynomial&, double, std::size_t, RngStream&)>;

/// Dispatches on dimension: 2 -> bivariate, 3 -> trivariate (variant a),
/// 4 -> quadrivariate. Other dimensions are rejected.
MgdSampler default_mgd_sampler();

/// Additive multifactor sampler: Y from the base sampler plus independent
/// gamma(p_i, lambda_i - lambda) margins (exactly zero where lambda_i equals
/// lambda).
SampleBatch sample_mfgd(const MfgdSpec& spec, std::size_t count, RngStream& rng,
                        const MgdSampler& base = default_mgd_sampler());

/// Stable fingerprint of (algorithm, polynomial, shape parameters), used to
/// tie a batch to the spec that generated it.
std::string spec_fingerprint(std::string_view algorithm,
                             const AffinePolynomial& poly,
                             std::span<const double> shape_params);

}  // namespace mgamma
