// Microbenchmarks for the exact-arithmetic hot paths: elimination, Krylov
// closure, the stability scan, and the Koszul tables. Sizes mirror the
// verification workloads.

#include <benchmark/benchmark.h>

#include "qts/construct.hpp"
#include "qts/homology.hpp"
#include "qts/rng.hpp"
#include "qts/stability.hpp"

using namespace qts;

namespace {

Mat random_square(int n, std::uint64_t seed) {
  Rng rng(seed);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.small_rational(9, 4);
  return m;
}

void BM_rref(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mat m = random_square(n, 42);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_rref)->Arg(8)->Arg(16)->Arg(32);

void BM_rank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mat m = random_square(n, 43);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_rank)->Arg(8)->Arg(16)->Arg(32);

void BM_krylov_closure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuotPoint qp = random_quot_point(n, 2, true, 44);
  Mat seed_col(n, 1);
  for (int i = 0; i < n; ++i) seed_col(i, 0) = qp.V(i, 0);
  for (auto _ : state) benchmark::DoNotOptimize(krylov_closure(qp, seed_col));
}
BENCHMARK(BM_krylov_closure)->Arg(4)->Arg(8)->Arg(12);

void BM_stability_reduced(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuotPoint qp = random_quot_point(n, 2, true, 45);
  for (auto _ : state) benchmark::DoNotOptimize(check_stability(qp));
}
BENCHMARK(BM_stability_reduced)->Arg(4)->Arg(8)->Arg(12);

void BM_stability_thick(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QuotPoint qp = random_quot_point(n, 3, false, 46);
  for (auto _ : state) benchmark::DoNotOptimize(check_stability(qp));
}
BENCHMARK(BM_stability_thick)->Arg(4)->Arg(6);

void BM_koszul_ext_self(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FiniteModule m = quotient_module(random_quot_point(n, 1, n % 2 == 0, 47));
  for (auto _ : state) benchmark::DoNotOptimize(koszul_ext(m, m));
}
BENCHMARK(BM_koszul_ext_self)->Arg(2)->Arg(4)->Arg(6);

void BM_iterate_construction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(iterate_construction(2, n, mix_seed(48, t++)));
}
BENCHMARK(BM_iterate_construction)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
