#include "rhb/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>

namespace rhb::kernels {

namespace {
std::atomic<int> g_threads{1};
}

void set_threads(int n) { g_threads.store(std::max(1, n)); }
int threads() { return g_threads.load(); }

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return reduce_indexed(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double norm_sq(std::span<const double> a) {
  return reduce_indexed(a.size(), [&](std::size_t i) { return a[i] * a[i]; });
}

double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

bool all_finite(std::span<const double> a) {
  // Counting keeps this a plain sum reduction.
  const double bad = reduce_indexed(a.size(), [&](std::size_t i) {
    return std::isfinite(a[i]) ? 0.0 : 1.0;
  });
  return bad == 0.0;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  for_each_index(x.size(), [&](std::size_t i) { y[i] += alpha * x[i]; });
}

void blend(double w, std::span<const double> x, std::span<double> avg) {
  assert(x.size() == avg.size());
  for_each_index(x.size(), [&](std::size_t i) { avg[i] += w * (x[i] - avg[i]); });
}

void copy(std::span<const double> src, std::span<double> dst) {
  assert(src.size() == dst.size());
  for_each_index(src.size(), [&](std::size_t i) { dst[i] = src[i]; });
}

void fill(std::span<double> dst, double value) {
  for_each_index(dst.size(), [&](std::size_t i) { dst[i] = value; });
}

namespace serial {

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(std::span<const double> a) { return dot(a, a); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void blend(double w, std::span<const double> x, std::span<double> avg) {
  for (std::size_t i = 0; i < x.size(); ++i) avg[i] += w * (x[i] - avg[i]);
}

}  // namespace serial

}  // namespace rhb::kernels
