#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "towercert/lambda_algebra.hpp"

namespace {

using towercert::lambda::BigInt;
using towercert::lambda::PadicSeries;

// Random series with mu = 1 and lambda = 3.
PadicSeries random_series(std::uint64_t p, int prec_p, int prec_x) {
  std::mt19937_64 rng(p * 1000 + static_cast<std::uint64_t>(prec_x));
  std::vector<BigInt> c(static_cast<std::size_t>(prec_x));
  for (int i = 0; i < prec_x; ++i) {
    BigInt v = 0;
    for (int d = 0; d < prec_p; ++d) v = v * p + rng() % p;
    if (i < 3) v *= p;
    if (i == 3 && v % p == 0) v += 1;
    c[static_cast<std::size_t>(i)] = v * p;
  }
  return PadicSeries(p, prec_p, prec_x, c);
}

void BM_Multiply(benchmark::State& state) {
  const int prec_x = static_cast<int>(state.range(0));
  const PadicSeries a = random_series(7, 20, prec_x);
  const PadicSeries b = random_series(7, 20, prec_x + 1).with_precision(20, prec_x);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(16)->Arg(64);

void BM_WeierstrassPrepare(benchmark::State& state) {
  const int prec_x = static_cast<int>(state.range(0));
  const PadicSeries f = random_series(7, 20, prec_x);
  for (auto _ : state) benchmark::DoNotOptimize(towercert::lambda::weierstrass_prepare(f));
}
BENCHMARK(BM_WeierstrassPrepare)->Arg(16)->Arg(64);

}  // namespace
