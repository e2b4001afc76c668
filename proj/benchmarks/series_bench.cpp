#include <benchmark/benchmark.h>

#include <array>

#include "mgamma/density.hpp"
#include "mgamma/series.hpp"

namespace {

mgamma::AffinePolynomial trivariate_example() {
  mgamma::AffinePolynomial p(3);
  p.set_coeff(mgamma::SubsetIndex::parse("1", 3), 1.0);
  p.set_coeff(mgamma::SubsetIndex::parse("2", 3), 1.0);
  p.set_coeff(mgamma::SubsetIndex::parse("3", 3), 1.0);
  p.set_coeff(mgamma::SubsetIndex::parse("1,2", 3), 0.55);
  p.set_coeff(mgamma::SubsetIndex::parse("1,3", 3), 0.45);
  p.set_coeff(mgamma::SubsetIndex::parse("2,3", 3), 0.5);
  p.set_coeff(mgamma::SubsetIndex::parse("1,2,3", 3), 0.2);
  return p;
}

void BM_HypF1(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  const double lower[1] = {2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::hyp_pfq({}, lower, z));
  }
}
BENCHMARK(BM_HypF1)->Arg(2)->Arg(50)->Arg(1000);

void BM_HornPhi3(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::horn_phi3(1.5, 4.0, 0.3 * z, z));
  }
}
BENCHMARK(BM_HornPhi3)->Arg(1)->Arg(20)->Arg(200);

void BM_Lauricella1F3(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0));
  const std::array<double, 4> args = {0.6 * z, 1.9 * z, 1.2 * z, 1.6 * z * z};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::lauricella_1f3(2.0, args));
  }
}
BENCHMARK(BM_Lauricella1F3)->Arg(1)->Arg(4)->Arg(16);

void BM_CoefficientExpansion(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const mgamma::DualTables tables = mgamma::dual_tables(trivariate_example());
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::c_alpha_expansion(tables, 2.0, degree));
  }
}
BENCHMARK(BM_CoefficientExpansion)->Arg(16)->Arg(32)->Arg(64);

void BM_TrivariatePdf(benchmark::State& state) {
  const mgamma::AffinePolynomial p = trivariate_example();
  const double scale = static_cast<double>(state.range(0));
  const std::array<double, 3> x = {0.5 * scale, 0.9 * scale, 1.3 * scale};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::pdf_tgd(p, 2.0, x));
  }
}
BENCHMARK(BM_TrivariatePdf)->Arg(1)->Arg(4)->Arg(10);

void BM_GeneralDensityEval(benchmark::State& state) {
  const mgamma::AffinePolynomial p = trivariate_example();
  const mgamma::GeneralDensity density(mgamma::MgdSpec(p, 2.0), 64);
  const std::array<double, 3> x = {1.5, 2.0, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(density(x));
  }
}
BENCHMARK(BM_GeneralDensityEval);

}  // namespace
