#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "mgamma/io.hpp"
#include "mgamma/validate.hpp"
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

}  // namespace

TEST_CASE("empirical moments") {
  SampleBatch batch;
  batch.dim = 2;
  batch.rows = 4;
  batch.data = {1.0, 2.0, 2.0, 4.0, 3.0, 6.0, 4.0, 8.0};
  const EmpiricalMoments m = empirical_moments(batch);
  CHECK(m.mean[0] == doctest::Approx(2.5));
  CHECK(m.mean[1] == doctest::Approx(5.0));
  CHECK(m.corr(0, 1) == doctest::Approx(1.0));

  SampleBatch constant;
  constant.dim = 2;
  constant.rows = 3;
  constant.data = {1.0, 2.0, 1.0, 3.0, 1.0, 4.0};
  const EmpiricalMoments mc = empirical_moments(constant);
  CHECK(!mc.correlation_defined);
  CHECK(std::isnan(mc.corr(0, 1)));
  CHECK(mc.cov(0, 0) == doctest::Approx(0.0));

  SampleBatch tiny;
  tiny.dim = 1;
  tiny.rows = 1;
  tiny.data = {1.0};
  CHECK_THROWS_AS(empirical_moments(tiny), std::invalid_argument);
}

TEST_CASE("independent columns stay uncorrelated") {
  RngStream rng(3);
  SampleBatch batch;
  batch.dim = 2;
  batch.rows = 20000;
  batch.data.resize(2 * batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    batch.data[2 * r] = rng.gamma(2.0, 1.0);
    batch.data[2 * r + 1] = rng.gamma(2.0, 1.0);
  }
  const EmpiricalMoments m = empirical_moments(batch);
  CHECK(std::abs(m.corr(0, 1)) < 3.0 / std::sqrt(20000.0));
}

TEST_CASE("transform check passes at zero and detects a wrong shape") {
  const AffinePolynomial p = example_p2();
  RngStream rng(5);
  const SampleBatch batch = sample_bgd(p, 2.0, 50'000, rng);

  const auto at_zero = lt_check(batch, MgdSpec(p, 2.0), {{0.0, 0.0}});
  REQUIRE(at_zero.size() == 1);
  CHECK(at_zero[0].statistic == 0.0);
  CHECK(at_zero[0].passed);

  const auto honest = lt_check(batch, MgdSpec(p, 2.0), {{0.1, 0.2}});
  CHECK(honest[0].passed);

  const auto wrong = lt_check(batch, MgdSpec(p, 2.6), {{0.1, 0.2}});
  CHECK(!wrong[0].passed);
}

TEST_CASE("marginal fit") {
  RngStream rng(7);
  SampleBatch batch;
  batch.dim = 1;
  batch.rows = 100'000;
  batch.data.resize(batch.rows);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    batch.data[r] = rng.gamma(2.0, 3.0);
  }
  CHECK(marginal_gof(batch, 0, 3.0, 2.0).passed);
  CHECK(!marginal_gof(batch, 0, 6.0, 2.0).passed);  // doubled scale
}

TEST_CASE("two-dimensional density fit") {
  const AffinePolynomial p = example_p2();
  RngStream rng(9);
  const SampleBatch batch = sample_bgd(p, 2.0, 100'000, rng);
  Grid2d grid;
  grid.bins_per_axis = 16;
  grid.upper1 = 6.0 + 4.0 * std::sqrt(18.0);
  grid.upper2 = grid.upper1;
  const auto self = density_check_2d(
      batch,
      [&](std::span<const double> x) { return pdf_bgd(p, 2.0, x).value; },
      grid);
  CHECK(self.passed);

  const auto control = density_check_2d(
      batch,
      [&](std::span<const double> x) {
        if (!(x[0] > 0.0 && x[1] > 0.0)) return 0.0;
        return testsupport::gamma_pdf(x[0], 2.0, 3.0) *
               testsupport::gamma_pdf(x[1], 2.0, 3.0);
      },
      grid);
  CHECK(!control.passed);
}

TEST_CASE("chi-square quantile sanity") {
  // median of chi2 with 2 dof is 2 ln 2
  CHECK(chi_square_quantile(0.5, 2) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-6));
  CHECK(chi_square_quantile(0.99, 10) == doctest::Approx(23.209).epsilon(1e-3));
}

TEST_CASE("suite on a small config") {
  ValidationConfig config;
  config.samples = 15'000;
  config.seed = 99;
  FixtureConfig fx;
  fx.name = "bgd";
  fx.algo = "bgd";
  fx.lambda = 2.0;
  fx.poly = example_p2();
  config.fixtures.push_back(fx);

  const ValidationReport report = run_suite(config);
  CHECK(report.overall_pass);
  CHECK(!report.checks.empty());

  // byte-for-byte determinism of the serialized report
  const ValidationReport again = run_suite(config);
  CHECK(report_to_json(report) == report_to_json(again));

  // negative controls are present and failed as designed
  int controls = 0;
  for (const CheckResult& c : report.checks) {
    if (c.expect_fail) {
      ++controls;
      CHECK(!c.passed);
    }
  }
  CHECK(controls > 0);
}

TEST_CASE("suite keeps going past a corrupted fixture") {
  ValidationConfig config;
  config.samples = 5'000;
  config.negative_controls = false;
  AffinePolynomial bad(2);
  bad.set_coeff(SubsetIndex::parse("1", 2), 1.0);
  bad.set_coeff(SubsetIndex::parse("2", 2), 1.0);
  bad.set_coeff(SubsetIndex::parse("1,2", 2), 2.0);

  FixtureConfig broken;
  broken.name = "broken";
  broken.algo = "bgd";
  broken.lambda = 2.0;
  broken.poly = bad;
  FixtureConfig good;
  good.name = "good";
  good.algo = "bgd";
  good.lambda = 2.0;
  good.poly = example_p2();
  config.fixtures = {broken, good};

  const ValidationReport report = run_suite(config);
  CHECK(!report.overall_pass);
  bool saw_broken = false, saw_good = false;
  for (const CheckResult& c : report.checks) {
    if (c.name == "broken/check-id") {
      saw_broken = true;
      CHECK(!c.passed);
    }
    if (c.name == "good/check-id") {
      saw_good = true;
      CHECK(c.passed);
    }
  }
  CHECK(saw_broken);
  CHECK(saw_good);
}

TEST_CASE("empty config yields an empty passing report") {
  ValidationConfig config;
  config.fixtures.clear();
  config.negative_controls = false;
  const ValidationReport report = run_suite(config);
  CHECK(report.overall_pass);
  CHECK(report.checks.empty());
}

TEST_CASE("default config covers the simulation fixtures") {
  const ValidationConfig config = default_validation_config(true);
  CHECK(config.fixtures.size() >= 10);
  CHECK(config.samples == 20'000);
}
