#include <doctest.h>

#include <stdexcept>
#include <cmath>
#include <random>

#include "mgamma/series.hpp"
#include "support/reference.hpp"

using namespace mgamma;
using testsupport::fact;
using testsupport::poch;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(2.0, 3) == 24.0);
  CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75));
  CHECK(pochhammer(-2.0, 3) == 0.0);
}

TEST_CASE("generalized hypergeometric series") {
  const double lam[1] = {2.0};
  CHECK(hyp_pfq({}, lam, 0.0).value == 1.0);

  // F0 is exp; the truncation stops once a term drops below tol * sum,
  // leaving a tail of the same order
  const SeriesValue e = hyp_pfq({}, {}, 1.0);
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(std::exp(1.0)).epsilon(1e-11));
  SeriesParams strict;
  strict.tol = 1e-15;
  CHECK(hyp_pfq({}, {}, 1.0, strict).value ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));

  // F1(1; 1) = sum 1/(k!)^2, brute-forced
  double brute = 0.0;
  for (int k = 0; k < 40; ++k) brute += 1.0 / (fact(k) * fact(k));
  const double one[1] = {1.0};
  const SeriesValue f = hyp_pfq({}, one, 1.0);
  CHECK(f.converged);
  CHECK(f.value == doctest::Approx(brute).epsilon(1e-14));
  CHECK(f.value == doctest::Approx(2.2795853).epsilon(1e-7));

  const double bad[1] = {-1.0};
  CHECK_THROWS_AS(hyp_pfq({}, bad, 0.5), std::domain_error);

  // budget exhaustion is reported, not silently rounded
  SeriesParams tiny;
  tiny.max_terms = 3;
  CHECK(!hyp_pfq({}, one, 5.0, tiny).converged);
}

TEST_CASE("confluent two-variable series") {
  CHECK(horn_phi3(0.7, 2.0, 0.0, 0.0).value == 1.0);

  // a = 0 collapses onto the single series in y
  const double lam[1] = {2.0};
  CHECK(horn_phi3(0.0, 2.0, 0.9, 0.4).value ==
        doctest::Approx(hyp_pfq({}, lam, 0.4).value).epsilon(1e-13));

  CHECK(horn_phi3(1.0, 2.0, 0.3, 0.5).value ==
        doctest::Approx(testsupport::brute_phi3(1.0, 2.0, 0.3, 0.5, 40))
            .epsilon(1e-12));
}

TEST_CASE("triple series") {
  CHECK(lauricella_fi(0.5, 0.7, 1.1, 0.0, 0.0, 0.0).value == 1.0);

  // a = 0 collapses onto the two-variable series
  CHECK(lauricella_fi(0.0, 0.8, 1.5, 0.9, 0.2, 0.3).value ==
        doctest::Approx(horn_phi3(0.8, 2.3, 0.2, 0.3).value).epsilon(1e-12));

  CHECK(lauricella_fi(1.0, 1.0, 1.0, 0.1, 0.2, 0.1).value ==
        doctest::Approx(testsupport::brute_fi(1.0, 1.0, 1.0, 0.1, 0.2, 0.1, 24))
            .epsilon(1e-12));
}

TEST_CASE("quadruple series, two lower parameters") {
  CHECK(lauricella_fii(1.5, 1.5, {0.0, 0.0, 0.0, 0.0}).value == 1.0);

  // only the third argument alive: single series with lower parameter l1
  const double l1[1] = {1.5};
  CHECK(lauricella_fii(1.5, 2.5, {0.0, 0.0, 0.7, 0.0}).value ==
        doctest::Approx(hyp_pfq({}, l1, 0.7).value).epsilon(1e-13));

  CHECK(lauricella_fii(2.0, 2.0, {0.1, 0.1, 0.1, 0.1}).value ==
        doctest::Approx(testsupport::brute_fii(2.0, 2.0, {0.1, 0.1, 0.1, 0.1}, 18))
            .epsilon(1e-12));
}

TEST_CASE("quadruple series, product form") {
  CHECK(lauricella_1f3(2.0, {0.0, 0.0, 0.0, 0.0}).value == 1.0);

  const double lam[1] = {2.0};
  CHECK(lauricella_1f3(2.0, {0.8, 0.0, 0.0, 0.0}).value ==
        doctest::Approx(hyp_pfq({}, lam, 0.8).value).epsilon(1e-13));

  CHECK(lauricella_1f3(2.0, {0.2, 0.1, 0.1, 0.05}).value ==
        doctest::Approx(testsupport::brute_1f3(2.0, {0.2, 0.1, 0.1, 0.05}, 18))
            .epsilon(1e-12));
}

TEST_CASE("series values are stable under a doubled budget") {
  SeriesParams base;
  SeriesParams doubled;
  doubled.max_terms = base.max_terms * 2;
  doubled.max_total_degree = base.max_total_degree;  // shells already converge
  const SeriesValue a = lauricella_1f3(2.0, {3.0, 2.0, 1.0, 4.0}, base);
  const SeriesValue b = lauricella_1f3(2.0, {3.0, 2.0, 1.0, 4.0}, doubled);
  REQUIRE(a.converged);
  CHECK(a.value == doctest::Approx(b.value).epsilon(base.tol));
}

namespace {

DualTables synthetic_tables3(double b12, double b13, double b23, double b123) {
  DualTables t;
  t.n = 3;
  t.dual.assign(8, 0.0);
  t.b.assign(8, 0.0);
  t.b_dual.assign(8, 0.0);
  t.remainder.assign(8, 0.0);
  t.remainder[0b011] = b12;
  t.remainder[0b101] = b13;
  t.remainder[0b110] = b23;
  t.remainder[0b111] = b123;
  t.b_dual = t.remainder;
  t.tilt = {0.0, 0.0, 0.0};
  return t;
}

// closed form for the three-variable remainder expansion
double closed_form_c3(const MultiIndex& alpha, double lambda, double b12,
                      double b13, double b23, double b123) {
  const int a1 = alpha.exponents[0], a2 = alpha.exponents[1],
            a3 = alpha.exponents[2];
  const int total = a1 + a2 + a3;
  const int maxdeg = alpha.max_degree();
  if (2 * maxdeg > total) return 0.0;
  double sum = 0.0;
  for (int k = maxdeg; 2 * k <= total; ++k) {
    sum += poch(lambda, k) * std::pow(b12, k - a3) * std::pow(b13, k - a2) *
           std::pow(b23, k - a1) * std::pow(b123, total - 2 * k) /
           (fact(k - a3) * fact(k - a2) * fact(k - a1) * fact(total - 2 * k));
  }
  return sum;
}

}  // namespace

TEST_CASE("two-variable expansion closed form") {
  DualTables t;
  t.n = 2;
  t.dual.assign(4, 0.0);
  t.b.assign(4, 0.0);
  t.b_dual.assign(4, 0.0);
  t.remainder.assign(4, 0.0);
  t.remainder[0b11] = 0.8;
  t.tilt = {0.0, 0.0};
  const double lambda = 1.7;
  const CoefficientExpansion exp = c_alpha_expansion(t, lambda, 12);
  for (const auto& [alpha, value] : exp.nonzero()) {
    REQUIRE(alpha.exponents[0] == alpha.exponents[1]);
    const int l = alpha.exponents[0];
    CHECK(value ==
          doctest::Approx(poch(lambda, l) / fact(l) * std::pow(0.8, l))
              .epsilon(1e-13));
  }
  // all alphas off the diagonal are zero
  MultiIndex off;
  off.exponents = {2, 1};
  CHECK(exp.coeff(off) == 0.0);
}

TEST_CASE("three-variable expansion matches the closed form") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unif(0.1, 1.2);
  for (int rep = 0; rep < 8; ++rep) {
    const double b12 = unif(gen), b13 = unif(gen), b23 = unif(gen),
                 b123 = unif(gen);
    const double lambda = 0.5 + unif(gen);
    const CoefficientExpansion exp =
        c_alpha_expansion(synthetic_tables3(b12, b13, b23, b123), lambda, 8);
    for (const MultiIndex& alpha : multi_indices_up_to(3, 8)) {
      const double closed = closed_form_c3(alpha, lambda, b12, b13, b23, b123);
      const double got = exp.coeff(alpha);
      if (closed == 0.0) {
        CHECK(std::abs(got) < 1e-14);
      } else {
        CHECK(got == doctest::Approx(closed).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("expansion basics and sparsity patterns") {
  const double lambda = 2.0;
  {
    // |alpha| = 1 coefficients vanish
    const CoefficientExpansion exp =
        c_alpha_expansion(synthetic_tables3(0.3, 0.4, 0.5, 0.6), lambda, 6);
    MultiIndex e100;
    e100.exponents = {1, 0, 0};
    CHECK(exp.coeff(e100) == 0.0);
    MultiIndex e110;
    e110.exponents = {1, 1, 0};
    CHECK(exp.coeff(e110) == doctest::Approx(lambda * 0.3).epsilon(1e-14));
    MultiIndex zero;
    zero.exponents = {0, 0, 0};
    CHECK(exp.coeff(zero) == 1.0);
  }
  {
    // vanishing triple coefficient: only even total degrees survive
    const CoefficientExpansion exp =
        c_alpha_expansion(synthetic_tables3(0.3, 0.4, 0.5, 0.0), lambda, 7);
    for (const auto& [alpha, value] : exp.nonzero()) {
      CHECK(alpha.total_degree() % 2 == 0);
      CHECK(value != 0.0);
    }
  }
  {
    // vanishing pair coefficients: only the diagonal multiples survive
    const CoefficientExpansion exp =
        c_alpha_expansion(synthetic_tables3(0.0, 0.0, 0.0, 0.7), lambda, 9);
    for (const auto& [alpha, value] : exp.nonzero()) {
      (void)value;
      CHECK(alpha.exponents[0] == alpha.exponents[1]);
      CHECK(alpha.exponents[1] == alpha.exponents[2]);
    }
    MultiIndex diag;
    diag.exponents = {2, 2, 2};
    CHECK(exp.coeff(diag) ==
          doctest::Approx(poch(lambda, 2) / fact(2) * 0.49).epsilon(1e-13));
  }
}

TEST_CASE("regularized lower incomplete gamma") {
  CHECK(reg_lower_incomplete_gamma(1.3, 0.0) == 0.0);
  CHECK(reg_lower_incomplete_gamma(1.0, 1.0) ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(reg_lower_incomplete_gamma(2.0, 2.0) ==
        doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
  // monotone in x
  double prev = 0.0;
  for (double x = 0.1; x < 30.0; x += 0.7) {
    const double v = reg_lower_incomplete_gamma(2.5, x);
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(reg_lower_incomplete_gamma(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(reg_lower_incomplete_gamma(1.0, -1.0), std::domain_error);
}
