// Serial reference kernels against the chunked OpenMP kernels.
//
// Problem benchmarks take the thread count as their second argument; a value
// of 1 runs the parallel code path on a single thread.

#include <benchmark/benchmark.h>

#include <omp.h>

#include <cstddef>
#include <memory>
#include <vector>

#include "rhb/heavy_ball.hpp"
#include "rhb/kernels.hpp"
#include "rhb/problems.hpp"
#include "rhb/rng.hpp"

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  rhb::Rng rng(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

void BM_DotSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rhb::kernels::serial::dot(a, b));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * n * 2 * sizeof(double)));
}

void BM_DotParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vector(n, 1), b = random_vector(n, 2);
  rhb::kernels::set_threads(omp_get_max_threads());
  for (auto _ : state) benchmark::DoNotOptimize(rhb::kernels::dot(a, b));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * n * 2 * sizeof(double)));
}

void BM_AxpySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  auto y = random_vector(n, 2);
  for (auto _ : state) {
    rhb::kernels::serial::axpy(1e-9, x, y);
    benchmark::ClobberMemory();
  }
}

void BM_AxpyParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  auto y = random_vector(n, 2);
  rhb::kernels::set_threads(omp_get_max_threads());
  for (auto _ : state) {
    rhb::kernels::axpy(1e-9, x, y);
    benchmark::ClobberMemory();
  }
}

void BM_BlendSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  auto avg = random_vector(n, 2);
  for (auto _ : state) {
    rhb::kernels::serial::blend(0.5, x, avg);
    benchmark::ClobberMemory();
  }
}

void BM_BlendParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vector(n, 1);
  auto avg = random_vector(n, 2);
  rhb::kernels::set_threads(omp_get_max_threads());
  for (auto _ : state) {
    rhb::kernels::blend(0.5, x, avg);
    benchmark::ClobberMemory();
  }
}

std::unique_ptr<rhb::Problem> problem_for(int which, std::size_t d) {
  switch (which) {
    case 0: return rhb::make_dixon_price(d);
    case 1: return rhb::make_powell(d);
    case 2: return rhb::make_qing(d);
    default: return rhb::make_rosenbrock(d);
  }
}

void BM_ProblemOracle(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  const auto problem = problem_for(static_cast<int>(state.range(2)), d);
  state.SetLabel(problem->name());
  rhb::DenseVector x(d);
  const auto v = random_vector(d, 3);
  for (std::size_t i = 0; i < d; ++i) x[i] = 0.1 * v[i];
  rhb::kernels::set_threads(threads);
  for (auto _ : state) benchmark::DoNotOptimize(problem->oracle(x));
}

void BM_HeavyBallRun(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const int threads = static_cast<int>(state.range(1));
  auto problem = rhb::make_rosenbrock(d);
  rhb::DenseVector x(d);
  const auto v = random_vector(d, 4);
  for (std::size_t i = 0; i < d; ++i) x[i] = 1.0 + v[i];
  rhb::HBConfig config;
  config.max_oracle_calls = 200;
  rhb::kernels::set_threads(threads);
  for (auto _ : state) benchmark::DoNotOptimize(rhb::run_heavy_ball(*problem, x, config).best_value);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long n : {1L << 12, 1L << 16, 1L << 20, 1L << 23}) b->Arg(n);
}

void problem_args(benchmark::internal::Benchmark* b) {
  const long max_threads = omp_get_max_threads();
  for (long which = 0; which < 4; ++which)
    for (long d : {1L << 16, 1L << 20})
      for (long t : {1L, max_threads}) b->Args({d, t, which});
}

void run_args(benchmark::internal::Benchmark* b) {
  const long max_threads = omp_get_max_threads();
  for (long d : {1L << 16, 1L << 20})
    for (long t : {1L, max_threads}) b->Args({d, t});
}

}  // namespace

BENCHMARK(BM_DotSerial)->Apply(sizes);
BENCHMARK(BM_DotParallel)->Apply(sizes);
BENCHMARK(BM_AxpySerial)->Apply(sizes);
BENCHMARK(BM_AxpyParallel)->Apply(sizes);
BENCHMARK(BM_BlendSerial)->Apply(sizes);
BENCHMARK(BM_BlendParallel)->Apply(sizes);
BENCHMARK(BM_ProblemOracle)->Apply(problem_args)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HeavyBallRun)->Apply(run_args)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
