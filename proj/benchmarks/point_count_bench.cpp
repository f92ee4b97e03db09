#include <benchmark/benchmark.h>

#include <cstdint>

#include "towercert/certify.hpp"
#include "towercert/hyperelliptic.hpp"

namespace {

using towercert::hyper::CurveModel;

const CurveModel& example_curve() {
  static const CurveModel curve(2, {0, 1, 1}, {1, 0, 0, 1});
  return curve;
}

// Point counts over F_{p^r} at a fixed good prime.
void BM_CountPoints(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const int r = static_cast<int>(state.range(1));
  const auto red = towercert::hyper::reduce_mod_p(example_curve(), p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(towercert::hyper::count_points(red.model, r));
  }
}
// Cost is linear in p^r.
BENCHMARK(BM_CountPoints)
    ->Args({101, 1})->Args({1009, 1})->Args({10007, 1})
    ->Args({101, 2})->Args({1009, 2})
    ->Args({101, 3})
    ->Unit(benchmark::kMicrosecond);

void BM_LocalData(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(towercert::hyper::compute_local_data(example_curve(), p));
  }
}
BENCHMARK(BM_LocalData)->Arg(101)->Arg(211)->Unit(benchmark::kMicrosecond);

void BM_Scan(benchmark::State& state) {
  towercert::certify::ArithmeticInvariants inv;
  inv.rank = 0;
  inv.torsion_order = 14;
  inv.sha_order = 1;
  inv.sha_provenance = towercert::certify::ShaProvenance::kAnalyticConjectural;
  inv.tamagawa.emplace();
  const auto pmax = static_cast<std::uint64_t>(state.range(0));
  const auto jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(towercert::certify::scan(example_curve(), inv, 5, pmax, jobs));
  }
}
BENCHMARK(BM_Scan)->Args({200, 1})->Args({200, 4})->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
