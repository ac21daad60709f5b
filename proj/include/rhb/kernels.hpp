#pragma once

// Data-parallel vector kernels.
//
// Every reduction is split into fixed-size chunks whose partial sums are
// combined in chunk order, so results are bit-identical for any thread count.
// The `serial` namespace keeps straightforward single-loop versions used as
// the reference in tests and benchmarks.

#include <cstddef>
#include <span>
#include <vector>

namespace rhb::kernels {

inline constexpr std::size_t kChunk = 4096;

// Caps the OpenMP team size used by the parallel kernels (n >= 1).
void set_threads(int n);
int threads();

// Sum of fn(i) over i in [0, n). fn may also write per-index outputs
// (e.g. a gradient component) as long as index i touches only slot i.
template <class Fn>
double reduce_indexed(std::size_t n, Fn&& fn) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  if (chunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += fn(i);
    return s;
  }
  std::vector<double> partial(chunks, 0.0);
  const auto nc = static_cast<long long>(chunks);
#pragma omp parallel for schedule(static) num_threads(threads())
  for (long long c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += fn(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Applies fn(i) for i in [0, n) in parallel; fn must only touch slot i.
template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
  const auto nn = static_cast<long long>(n);
  if (n <= kChunk) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#pragma omp parallel for schedule(static) num_threads(threads())
  for (long long i = 0; i < nn; ++i) fn(static_cast<std::size_t>(i));
}

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
double norm(std::span<const double> a);
double max_abs(std::span<const double> a);
bool all_finite(std::span<const double> a);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// avg += w * (x - avg)
void blend(double w, std::span<const double> x, std::span<double> avg);
void copy(std::span<const double> src, std::span<double> dst);
void fill(std::span<double> dst, double value);

namespace serial {

template <class Fn>
double reduce_indexed(std::size_t n, Fn&& fn) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += fn(i);
  return s;
}

double dot(std::span<const double> a, std::span<const double> b);
double norm_sq(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void blend(double w, std::span<const double> x, std::span<double> avg);

}  // namespace serial

}  // namespace rhb::kernels
