#include <doctest.h>

#include <stdexcept>
#include <array>
#include <cmath>
#include <vector>

#include "mgamma/density.hpp"
#include "mgamma/dual_tables.hpp"
#include "support/quadrature.hpp"
#include "support/reference.hpp"

using namespace mgamma;

namespace {

AffinePolynomial example_p2() {
  AffinePolynomial p(2);
  p.set_coeff(SubsetIndex::parse("1", 2), 3.0);
  p.set_coeff(SubsetIndex::parse("2", 2), 3.0);
  p.set_coeff(SubsetIndex::parse("1,2", 2), 1.0);
  return p;
}

AffinePolynomial example_p3() {
  AffinePolynomial p(3);
  p.set_coeff(SubsetIndex::parse("1", 3), 1.0);
  p.set_coeff(SubsetIndex::parse("2", 3), 1.0);
  p.set_coeff(SubsetIndex::parse("3", 3), 1.0);
  p.set_coeff(SubsetIndex::parse("1,2", 3), 0.55);
  p.set_coeff(SubsetIndex::parse("1,3", 3), 0.45);
  p.set_coeff(SubsetIndex::parse("2,3", 3), 0.5);
  p.set_coeff(SubsetIndex::parse("1,2,3", 3), 0.2);
  return p;
}

// all pairwise dual-partition coefficients vanish, the triple one is positive
AffinePolynomial kibble_moran_p3() {
  AffinePolynomial p(3);
  const double c = 1.0, t = 0.8;
  for (int i = 1; i <= 3; ++i) {
    p.set_coeff(SubsetIndex::singleton(i, 3), c * c / t);
  }
  p.set_coeff(SubsetIndex::parse("1,2", 3), c);
  p.set_coeff(SubsetIndex::parse("1,3", 3), c);
  p.set_coeff(SubsetIndex::parse("2,3", 3), c);
  p.set_coeff(SubsetIndex::parse("1,2,3", 3), t);
  return p;
}

}  // namespace

TEST_CASE("bivariate density") {
  const AffinePolynomial p = example_p2();
  const double lambda = 1.0;

  // prefactor limit near the origin for unit shape
  CHECK(pdf_bgd(p, lambda, std::array{1e-9, 1e-9}).value ==
        doctest::Approx(1.0 / p.coeff_mask(0b11)).epsilon(1e-4));

  // outside the support
  CHECK(pdf_bgd(p, 2.0, std::array{-0.5, 1.0}).value == 0.0);

  // independent case: product of the margins
  const std::vector<double> scales = {2.0, 0.7};
  const AffinePolynomial indep = AffinePolynomial::independent(scales);
  const std::array<double, 2> x = {1.3, 0.4};
  CHECK(pdf_bgd(indep, 1.7, x).value ==
        doctest::Approx(testsupport::gamma_pdf(x[0], 1.7, 2.0) *
                        testsupport::gamma_pdf(x[1], 1.7, 0.7))
            .epsilon(1e-12));

  // mass one by quadrature
  const double integral = testsupport::integrate_2d(
      [&](double a, double b) {
        return pdf_bgd(p, 2.0, std::array{a, b}).value;
      },
      6.0 + 10.0 * std::sqrt(18.0), 6.0 + 10.0 * std::sqrt(18.0), 64);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));

  AffinePolynomial bad(2);
  bad.set_coeff(SubsetIndex::parse("1", 2), 1.0);
  bad.set_coeff(SubsetIndex::parse("2", 2), 1.0);
  bad.set_coeff(SubsetIndex::parse("1,2", 2), 2.0);
  CHECK_THROWS_AS(pdf_bgd(bad, 2.0, x), std::domain_error);
}

namespace {

// small pair coefficient and shapes: keeps the series arguments desk-scale
// across the whole quadrature box
AffinePolynomial mild_p2() {
  AffinePolynomial p(2);
  p.set_coeff(SubsetIndex::parse("1", 2), 1.0);
  p.set_coeff(SubsetIndex::parse("2", 2), 1.0);
  p.set_coeff(SubsetIndex::parse("1,2", 2), 0.5);
  return p;
}

}  // namespace

TEST_CASE("one upgraded margin") {
  const AffinePolynomial p = example_p2();
  const std::array<double, 2> x = {2.0, 5.0};

  // equal shapes reduce to the base bivariate density
  CHECK(pdf_multisensor(p, 2.0, 2.0, x).value ==
        doctest::Approx(pdf_bgd(p, 2.0, x).value).epsilon(1e-12));

  // mass one (milder fixture; the series arguments grow with the box)
  const AffinePolynomial mild = mild_p2();
  const double integral = testsupport::integrate_2d(
      [&](double a, double b) {
        return pdf_multisensor(mild, 1.0, 2.0, std::array{a, b}).value;
      },
      1.0 + 8.0 * 1.0, 2.0 + 8.0 * std::sqrt(2.0), 48);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));

  // second margin follows the upgraded shape
  const double x2 = 1.5;
  const double marginal = testsupport::integrate_1d(
      [&](double a) {
        return pdf_multisensor(mild, 1.0, 2.0, std::array{a, x2}).value;
      },
      0.0, 1.0 + 10.0 * 1.0, 96);
  CHECK(marginal ==
        doctest::Approx(testsupport::gamma_pdf(x2, 2.0, 1.0)).epsilon(1e-6));
}

TEST_CASE("both margins upgraded") {
  const AffinePolynomial p = example_p2();
  const std::array<double, 2> x = {2.5, 4.0};

  CHECK(pdf_bivariate_mfgd(p, 2.0, 2.0, 3.5, x).value ==
        doctest::Approx(pdf_multisensor(p, 2.0, 3.5, x).value).epsilon(1e-11));
  CHECK(pdf_bivariate_mfgd(p, 2.0, 2.0, 2.0, x).value ==
        doctest::Approx(pdf_bgd(p, 2.0, x).value).epsilon(1e-12));

  const AffinePolynomial mild = mild_p2();
  const double integral = testsupport::integrate_2d(
      [&](double a, double b) {
        return pdf_bivariate_mfgd(mild, 1.0, 1.5, 2.0, std::array{a, b}).value;
      },
      1.5 + 8.0 * std::sqrt(1.5), 2.0 + 8.0 * std::sqrt(2.0), 48);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("trivariate density forms agree") {
  const AffinePolynomial p = example_p3();
  const double lambda = 2.0;
  const DualTables t = dual_tables(p);

  const std::array<std::array<double, 3>, 4> points = {{
      {0.5, 0.8, 1.1},
      {1.5, 2.0, 0.7},
      {2.5, 2.5, 2.5},
      {4.0, 1.0, 3.0},
  }};
  for (const auto& x : points) {
    const double direct = pdf_tgd(p, lambda, x).value;

    // alternative route through the two-lower-parameter series
    const double z1 = t.b_dual[0b011] * x[0] * x[1];
    const double z2 = t.b_dual[0b101] * x[0] * x[2];
    const double z3 = t.b_dual[0b110] * x[1] * x[2];
    const double z4 = t.b_dual[0b111] * x[0] * x[1] * x[2];
    const double series =
        lauricella_fii(lambda, lambda, {z2 * z3, z4, z1, z2 + z3}).value;
    const double log_pre =
        -lambda * std::log(p.top_coeff()) - 3.0 * std::lgamma(lambda) +
        t.tilt[0] * x[0] + t.tilt[1] * x[1] + t.tilt[2] * x[2] +
        (lambda - 1.0) * (std::log(x[0]) + std::log(x[1]) + std::log(x[2]));
    CHECK(direct == doctest::Approx(std::exp(log_pre) * series).epsilon(1e-8));
  }
}

TEST_CASE("vanishing pair coefficients collapse onto the two-parameter series") {
  const AffinePolynomial p = kibble_moran_p3();
  const DualTables t = dual_tables(p);
  REQUIRE(std::abs(t.b_dual[0b011]) < 1e-14);
  const double lambda = 1.0;  // the classical case
  const std::array<double, 3> x = {0.9, 1.4, 0.6};
  const double direct = pdf_tgd(p, lambda, x).value;

  const double lower[2] = {lambda, lambda};
  const double f2 =
      hyp_pfq({}, lower, t.b_dual[0b111] * x[0] * x[1] * x[2]).value;
  const double log_pre =
      -lambda * std::log(p.top_coeff()) - 3.0 * std::lgamma(lambda) +
      t.tilt[0] * x[0] + t.tilt[1] * x[1] + t.tilt[2] * x[2] +
      (lambda - 1.0) * (std::log(x[0]) + std::log(x[1]) + std::log(x[2]));
  CHECK(direct == doctest::Approx(std::exp(log_pre) * f2).epsilon(1e-12));
}

TEST_CASE("exchangeable density") {
  // nearly independent: product of the margins
  {
    const double p = 1.0 - 1e-12;
    const std::array<double, 2> x = {0.8, 1.7};
    const double got = pdf_exchangeable(2, p, 1.5, x).value;
    const double prod = testsupport::gamma_pdf(x[0], 1.5, p) *
                        testsupport::gamma_pdf(x[1], 1.5, p);
    CHECK(got == doctest::Approx(prod).epsilon(1e-9));
  }
  // two dimensions: same law as the induced polynomial's density
  {
    const double p = 0.5;
    const AffinePolynomial induced = AffinePolynomial::exchangeable(2, p);
    for (const auto& x : {std::array{0.5, 0.9}, std::array{2.0, 1.2}}) {
      CHECK(pdf_exchangeable(2, p, 2.0, x).value ==
            doctest::Approx(pdf_bgd(induced, 2.0, x).value).epsilon(1e-10));
    }
  }
  // mass one
  const double integral = testsupport::integrate_2d(
      [&](double a, double b) {
        return pdf_exchangeable(2, 0.5, 2.0, std::array{a, b}).value;
      },
      2.0 + 10.0 * std::sqrt(2.0), 2.0 + 10.0 * std::sqrt(2.0), 64);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
  // exchangeable density for three coordinates matches the trivariate form
  {
    const double p = 0.5;
    const AffinePolynomial induced = AffinePolynomial::exchangeable(3, p);
    for (const auto& x :
         {std::array{0.5, 0.9, 1.3}, std::array{2.0, 1.2, 0.4}}) {
      CHECK(pdf_exchangeable(3, p, 2.0, x).value ==
            doctest::Approx(pdf_tgd(induced, 2.0, x).value).epsilon(1e-8));
    }
  }
}

TEST_CASE("general density equals the closed forms") {
  {
    const AffinePolynomial p = example_p2();
    const MgdSpec spec(p, 2.0);
    const GeneralDensity general(spec, 48);
    for (const auto& x : {std::array{0.5, 0.5}, std::array{2.0, 3.0},
                          std::array{6.0, 1.0}}) {
      CHECK(general(x).value ==
            doctest::Approx(pdf_bgd(p, 2.0, x).value).epsilon(1e-10));
    }
    // one-shot variant
    CHECK(pdf_general(spec, std::array{1.0, 2.0}).value ==
          doctest::Approx(pdf_bgd(p, 2.0, std::array{1.0, 2.0}).value)
              .epsilon(1e-10));
  }
  {
    const AffinePolynomial p = example_p3();
    const MgdSpec spec(p, 2.0);
    const GeneralDensity general(spec, 48);
    for (const auto& x : {std::array{0.5, 0.8, 1.1}, std::array{1.5, 2.0, 0.7},
                          std::array{3.0, 1.0, 2.0}}) {
      CHECK(general(x).value ==
            doctest::Approx(pdf_tgd(p, 2.0, x).value).epsilon(1e-8));
    }
  }
  {
    // vanishing remainder: product of the margins (scales chosen so the
    // pair coefficients cancel exactly in floating point)
    const std::vector<double> scales = {2.0, 0.5, 1.25};
    const AffinePolynomial indep = AffinePolynomial::independent(scales);
    const MgdSpec spec(indep, 1.3);
    const GeneralDensity general(spec, 16);
    const std::array<double, 3> x = {0.7, 1.9, 0.4};
    double prod = 1.0;
    for (int i = 0; i < 3; ++i) {
      prod *= testsupport::gamma_pdf(x[i], 1.3, scales[i]);
    }
    CHECK(general(x).value == doctest::Approx(prod).epsilon(1e-12));
  }
}

TEST_CASE("support and sign of every density") {
  const AffinePolynomial p2 = example_p2();
  const AffinePolynomial p3 = example_p3();
  const std::array<double, 3> outside3 = {1.0, -0.2, 1.0};
  const std::array<double, 2> outside2 = {0.0, 1.0};
  CHECK(pdf_bgd(p2, 2.0, outside2).value == 0.0);
  CHECK(pdf_multisensor(p2, 2.0, 3.0, outside2).value == 0.0);
  CHECK(pdf_bivariate_mfgd(p2, 2.0, 3.0, 4.0, outside2).value == 0.0);
  CHECK(pdf_tgd(p3, 2.0, outside3).value == 0.0);
  CHECK(pdf_exchangeable(3, 0.5, 2.0, outside3).value == 0.0);
  CHECK(pdf_general(MgdSpec(p3, 2.0), outside3).value == 0.0);
  for (double x1 : {0.3, 1.0, 4.0}) {
    for (double x2 : {0.3, 1.0, 4.0}) {
      CHECK(pdf_bgd(p2, 2.0, std::array{x1, x2}).value >= 0.0);
      CHECK(pdf_multisensor(p2, 2.0, 3.0, std::array{x1, x2}).value >= 0.0);
      CHECK(pdf_bivariate_mfgd(p2, 2.0, 3.0, 4.0, std::array{x1, x2}).value >=
            0.0);
      CHECK(pdf_tgd(p3, 2.0, std::array{x1, x2, 1.0}).value >= 0.0);
      CHECK(pdf_exchangeable(3, 0.5, 2.0, std::array{x1, x2, 1.0}).value >=
            0.0);
    }
  }
}

TEST_CASE("closed conditional transform") {
  const AffinePolynomial p3 = example_p3();
  CHECK(conditional_lt_closed(p3, 2.0, 1.3, std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // two dimensions: the explicit single-pair form
  const AffinePolynomial p2 = example_p2();
  const DualTables t = dual_tables(p2);
  for (double theta : {0.1, 0.5, 1.5}) {
    for (double x1 : {0.5, 1.0, 2.0}) {
      const double s2 = 1.0 + p2.coeff_mask(0b11) / p2.coeff_mask(0b01) * theta;
      const double expected =
          std::pow(s2, -2.0) *
          std::exp(t.b_dual[0b11] / (-t.dual[0b10]) * x1 * (1.0 / s2 - 1.0));
      CHECK(conditional_lt_closed(p2, 2.0, x1, std::vector<double>{theta}) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }

  // conditioning on a vanishing first coordinate leaves the S-polynomial law
  {
    const std::vector<double> theta = {0.3, 0.6};
    const AffinePolynomial s23 = s_polynomial(p3, SubsetIndex::parse("2,3", 3));
    CHECK(conditional_lt_closed(p3, 2.0, 1e-13, theta) ==
          doctest::Approx(std::pow(s23(theta), -2.0)).epsilon(1e-10));
  }

  // exchangeable family: matches the explicit exponential form
  const int n = 4;
  const double p = 0.4, q = 0.6, lambda = 1.5;
  const AffinePolynomial exch = AffinePolynomial::exchangeable(n, p);
  const std::vector<double> theta_tail = {0.3, 0.1, 0.7};
  for (double x1 : {0.5, 2.0}) {
    double prod = 1.0;
    for (double th : theta_tail) prod *= 1.0 + p * th;
    const double expected =
        std::pow(prod, -lambda) * std::exp(q / p * x1 * (1.0 / prod - 1.0));
    CHECK(conditional_lt_closed(exch, lambda, x1, theta_tail) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(conditional_lt_exchangeable(n, p, lambda, 1, std::vector<double>{x1},
                                      theta_tail)
              .value == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("exchangeable conditional transform") {
  const int n = 4;
  const double p = 0.4, lambda = 2.0;
  const std::vector<double> x_head = {1.0, 0.5};
  CHECK(conditional_lt_exchangeable(n, p, lambda, 2, x_head,
                                    std::vector<double>{0.0, 0.0})
            .value == doctest::Approx(1.0).epsilon(1e-12));

  // nearly independent: unconditional product transform
  const std::vector<double> theta_tail = {0.4, 0.9};
  const double p_high = 1.0 - 1e-10;
  double prod = 1.0;
  for (double th : theta_tail) prod *= 1.0 + p_high * th;
  CHECK(conditional_lt_exchangeable(n, p_high, lambda, 2, x_head, theta_tail)
            .value == doctest::Approx(std::pow(prod, -lambda)).epsilon(1e-8));

  // conditioning on one coordinate agrees across the two routes
  const std::vector<double> tail3 = {0.4, 0.9, 0.2};
  CHECK(conditional_lt_exchangeable(n, p, lambda, 1, std::vector<double>{1.2},
                                    tail3)
            .value ==
        doctest::Approx(conditional_lt_closed(
                            AffinePolynomial::exchangeable(n, p), lambda, 1.2,
                            tail3))
            .epsilon(1e-10));
}
