#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mgamma/dual_tables.hpp"
#include "mgamma/markov.hpp"

namespace {

mgamma::AffinePolynomial random_polynomial(int n) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unif(0.2, 3.0);
  mgamma::AffinePolynomial p(n);
  for (const auto& t : mgamma::subsets(n, true)) p.set_coeff(t, unif(gen));
  return p;
}

void BM_DualTables(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mgamma::AffinePolynomial p = random_polynomial(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::dual_tables(p));
  }
}
BENCHMARK(BM_DualTables)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_CheckId(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> rho(n - 1, 0.5);
  const mgamma::AffinePolynomial p =
      mgamma::markov_polynomial(mgamma::markov_sqrt_matrix(rho));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::check_id(p, 1e-9));
  }
}
BENCHMARK(BM_CheckId)->Arg(4)->Arg(8);

void BM_MarkovPolynomial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> rho(n - 1, 0.6);
  const mgamma::SquareMatrix m = mgamma::markov_sqrt_matrix(rho);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mgamma::markov_polynomial(m));
  }
}
BENCHMARK(BM_MarkovPolynomial)->Arg(5)->Arg(10)->Arg(14);

void BM_PartitionsIntoK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const mgamma::SubsetIndex full = mgamma::SubsetIndex::full(n);
  for (auto _ : state) {
    for (int k = 1; k <= n; ++k) {
      benchmark::DoNotOptimize(mgamma::partitions_into_k(full, k));
    }
  }
}
BENCHMARK(BM_PartitionsIntoK)->Arg(5)->Arg(8);

}  // namespace
