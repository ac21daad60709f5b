#include "rhb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rhb/errors.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/kernels.hpp"
#include "rhb/rng.hpp"

namespace rhb {

Box Box::inflated(double fraction) const {
  Box out = *this;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double margin = fraction * (upper[i] - lower[i]);
    out.lower[i] -= margin;
    out.upper[i] += margin;
  }
  return out;
}

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

Box Box::cube(std::size_t d, double lo, double hi) {
  return Box{std::vector<double>(d, lo), std::vector<double>(d, hi)};
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : violations) v.push_back({{"K", x.K}, {"k", x.k}, {"lhs", x.lhs}, {"rhs", x.rhs}});
  return {{"check", check}, {"violations", v}, {"tolerance", tolerance}};
}

namespace {

std::string format_nu(double nu) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", nu);
  return buf;
}

void check_region(const Problem& problem, const Box& region) {
  if (region.dim() != problem.dim() || region.upper.size() != region.lower.size())
    throw InvalidInput("region dimension does not match the problem");
  for (std::size_t i = 0; i < region.dim(); ++i)
    if (!(region.lower[i] <= region.upper[i])) throw InvalidInput("region has lower > upper");
}

void draw_uniform(Rng& rng, const Box& b, DenseVector& x) {
  for (std::size_t i = 0; i < b.dim(); ++i) x[i] = rng.uniform(b.lower[i], b.upper[i]);
}

// Fills (x, y) for sample index i; see header for the three designs.
void draw_pair(Rng& rng, const Box& b, std::int64_t i, DenseVector& x, DenseVector& y) {
  const std::size_t d = b.dim();
  switch (i % 3) {
    case 0:
      draw_uniform(rng, b, x);
      draw_uniform(rng, b, y);
      break;
    case 1:
      for (std::size_t j = 0; j < d; ++j) {
        x[j] = (rng.next_u64() & 1) ? b.upper[j] : b.lower[j];
        y[j] = (rng.next_u64() & 1) ? b.upper[j] : b.lower[j];
      }
      break;
    default: {
      draw_uniform(rng, b, x);
      y = x;
      const auto j = static_cast<std::size_t>(rng.below(d));
      y[j] = rng.uniform(b.lower[j], b.upper[j]);
      break;
    }
  }
}

double distance(const DenseVector& x, const DenseVector& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
  return std::sqrt(s);
}

}  // namespace

double estimate_grad_lipschitz(const Problem& problem, const Box& region, std::int64_t n_samples,
                               std::uint64_t seed) {
  check_region(problem, region);
  if (n_samples < 2) throw InvalidInput("estimate_grad_lipschitz: need at least 2 samples");
  const std::size_t d = problem.dim();
  Rng rng(seed);
  DenseVector x(d), y(d), gx(d), gy(d);
  double best = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    draw_pair(rng, region, i, x, y);
    const double dist = distance(x, y);
    if (dist == 0.0) continue;
    problem.oracle(x.span(), gx.span());
    problem.oracle(y.span(), gy.span());
    kernels::axpy(-1.0, gy.span(), gx.span());
    best = std::max(best, kernels::norm(gx.span()) / dist);
  }
  return best;
}

HolderEstimate estimate_holder_hessian(const Problem& problem, const Box& region, double nu,
                                       std::int64_t n_samples, std::uint64_t seed) {
  check_region(problem, region);
  if (problem.dim() > kMaxHessianDim)
    throw DimensionTooLarge("estimate_holder_hessian: dimension " + std::to_string(problem.dim()) +
                            " exceeds " + std::to_string(kMaxHessianDim));
  if (!(nu >= 0.0 && nu <= 1.0)) throw InvalidInput("estimate_holder_hessian: nu must lie in [0, 1]");
  if (n_samples < 1) throw InvalidInput("estimate_holder_hessian: need at least 1 sample");
  const std::size_t d = problem.dim();
  Rng rng(seed);
  DenseVector x(d), y(d);
  HolderEstimate est{nu, 0.0, region, n_samples};
  for (std::int64_t i = 0; i < n_samples; ++i) {
    draw_pair(rng, region, i, x, y);
    const double dist = distance(x, y);
    if (dist == 0.0) continue;
    const Eigen::MatrixXd diff = fd_hessian(problem, x) - fd_hessian(problem, y);
    est.h_hat = std::max(est.h_hat, symmetric_operator_norm(diff) / std::pow(dist, nu));
  }
  return est;
}

void validate_trace(const RunTrace& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& r = trace[i];
    const auto where = " at record " + std::to_string(i + 1);
    if (r.k < 1) throw MalformedTrace("in-epoch counter k must be >= 1" + where);
    if (!(r.ell > 0.0)) throw MalformedTrace("ell must be positive" + where);
    if (!(r.s_sum >= 0.0) || !(r.h >= 0.0) || !(r.v_norm >= 0.0) || !(r.grad_norm_xbar >= 0.0))
      throw MalformedTrace("negative or non-finite nonnegative field" + where);
    if (i == 0) {
      if (r.k != 1) throw MalformedTrace("trace must start an epoch with k = 1");
      continue;
    }
    const auto& p = trace[i - 1];
    if (r.K != p.K + 1) throw MalformedTrace("K must increase by one" + where);
    if (p.event == Event::terminated) throw MalformedTrace("record after termination" + where);
    const bool restarted = p.event == Event::restart_successful || p.event == Event::restart_unsuccessful;
    if (restarted) {
      if (r.k != 1) throw MalformedTrace("k must restart at 1 after a restart" + where);
    } else {
      if (r.k != p.k + 1) throw MalformedTrace("k must increase by one within an epoch" + where);
      if (r.ell != p.ell) throw MalformedTrace("ell changed within an epoch" + where);
    }
  }
}

namespace {

// Calls fn(epoch) for every maximal run of records belonging to one epoch.
template <class Fn>
void for_each_epoch(const RunTrace& trace, Fn&& fn) {
  std::size_t start = 0;
  for (std::size_t i = 1; i <= trace.size(); ++i) {
    if (i == trace.size() || trace[i].k == 1) {
      fn(std::span<const IterationRecord>(trace.data() + start, i - start));
      start = i;
    }
  }
}

}  // namespace

VerificationReport verify_epoch_decrease(const RunTrace& trace) {
  validate_trace(trace);
  VerificationReport rep{"epoch_decrease", {}, "1e-9 (1 + |f(x_0)|)"};
  for_each_epoch(trace, [&](std::span<const IterationRecord> epoch) {
    const double f0 = epoch.front().f_xbar;
    const double tol = 1e-9 * (1.0 + std::abs(f0));
    double min_f = std::numeric_limits<double>::infinity();
    for (const auto& r : epoch) {
      if (r.event == Event::restart_unsuccessful) break;
      min_f = std::min(min_f, r.f_x);
      const double rhs = f0 - r.ell * r.s_sum / (4.0 * static_cast<double>(r.k));
      if (min_f > rhs + tol) rep.violations.push_back({r.K, r.k, min_f, rhs});
    }
  });
  return rep;
}

VerificationReport verify_avg_grad_bound(const RunTrace& trace) {
  validate_trace(trace);
  VerificationReport rep{"averaged_gradient_min_bound", {}, "1e-9 (1 + bound)"};
  for_each_epoch(trace, [&](std::span<const IterationRecord> epoch) {
    double min_g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < epoch.size(); ++i) {
      min_g = std::min(min_g, epoch[i - 1].grad_norm_xbar);
      const auto& r = epoch[i];
      const double kd = static_cast<double>(r.k);
      const double rhs = r.ell * std::sqrt(8.0 * epoch[i - 1].s_sum / (kd * kd * kd));
      if (min_g > rhs + 1e-9 * (1.0 + rhs)) rep.violations.push_back({r.K, r.k, min_g, rhs});
    }
  });
  return rep;
}

VerificationReport verify_h_bound(const RunTrace& trace, const HolderEstimate& estimate) {
  validate_trace(trace);
  VerificationReport rep{"h_bound_nu_" + format_nu(estimate.nu), {}, "5% relative + 1e-10 absolute"};
  for (const auto& r : trace) {
    const double rhs =
        estimate.h_hat * std::pow(static_cast<double>(r.k) * r.s_sum, 0.5 * estimate.nu) * (1.0 + kSampledConstantSlack);
    if (r.h > rhs + 1e-10) rep.violations.push_back({r.K, r.k, r.h, rhs});
  }
  return rep;
}

VerificationReport verify_ell_bound(const RunTrace& trace, double l_init, double alpha, double lipschitz) {
  VerificationReport rep{"ell_bound", {}, "0"};
  const double bound = std::max(l_init, alpha * lipschitz);
  for (const auto& r : trace)
    if (r.ell > bound) rep.violations.push_back({r.K, r.k, r.ell, bound});
  return rep;
}

std::vector<VerificationReport> verify_pointwise_lemmas(const Problem& problem, const HolderEstimate& estimate,
                                                        std::int64_t n_samples, std::uint64_t seed) {
  check_region(problem, estimate.region);
  const Box& box = estimate.region;
  const std::size_t d = problem.dim();
  const double nu = estimate.nu;
  const double H = estimate.h_hat * (1.0 + kSampledConstantSlack);
  VerificationReport jensen{"gradient_averaging_nu_" + format_nu(nu), {}, "5% on H + 1e-12 (1 + sum lambda ||g_i||)"};
  VerificationReport trapezoid{"trapezoid_rule_nu_" + format_nu(nu), {}, "5% on H + 1e-12 (1 + |f(x)| + |f(y)| + |inner|)"};

  Rng rng(seed);
  constexpr std::size_t kMaxPoints = 4;
  std::vector<DenseVector> z(kMaxPoints, DenseVector(d));
  std::vector<DenseVector> gz(kMaxPoints, DenseVector(d));
  std::vector<double> fz(kMaxPoints), lambda(kMaxPoints);
  DenseVector zbar(d), gbar(d), y(d), gy(d);

  for (std::int64_t s = 0; s < n_samples; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(s) % kMaxPoints;
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      draw_uniform(rng, box, z[i]);
      lambda[i] = -std::log(1.0 - rng.uniform());
      wsum += lambda[i];
    }
    zbar.fill(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      lambda[i] /= wsum;
      kernels::axpy(lambda[i], z[i].span(), zbar.span());
      fz[i] = problem.oracle(z[i].span(), gz[i].span());
    }

    // ||∇f(z̄) - Σ λ_i ∇f(z_i)|| <= H/(1+ν) Σ λ_i ||z_i - z̄||^{1+ν}
    problem.oracle(zbar.span(), gbar.span());
    double rhs = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      kernels::axpy(-lambda[i], gz[i].span(), gbar.span());
      rhs += lambda[i] * std::pow(distance(z[i], zbar), 1.0 + nu);
      scale += lambda[i] * kernels::norm(gz[i].span());
    }
    rhs *= H / (1.0 + nu);
    const double lhs = kernels::norm(gbar.span());
    if (lhs > rhs + 1e-12 * scale)
      jensen.violations.push_back({s, static_cast<std::int64_t>(n), lhs, rhs});

    // f(x) - f(y) <= ½<∇f(x) + ∇f(y), x - y> + 2H/((1+ν)(2+ν)(3+ν)) ||x - y||^{2+ν}
    const DenseVector* px = &z[0];
    const DenseVector* pgx = &gz[0];
    double fx = fz[0];
    double fy;
    if (n >= 2) {
      y = z[1];
      gy = gz[1];
      fy = fz[1];
    } else {
      draw_uniform(rng, box, y);
      fy = problem.oracle(y.span(), gy.span());
    }
    double inner = 0.0;
    for (std::size_t j = 0; j < d; ++j) inner += 0.5 * ((*pgx)[j] + gy[j]) * ((*px)[j] - y[j]);
    const double dist = distance(*px, y);
    const double t_rhs = inner + 2.0 * H / ((1.0 + nu) * (2.0 + nu) * (3.0 + nu)) * std::pow(dist, 2.0 + nu);
    const double t_lhs = fx - fy;
    const double t_tol = 1e-12 * (1.0 + std::abs(fx) + std::abs(fy) + std::abs(inner));
    if (t_lhs > t_rhs + t_tol) trapezoid.violations.push_back({s, static_cast<std::int64_t>(n), t_lhs, t_rhs});
  }
  return {jensen, trapezoid};
}

void StepInequalityMonitor::observe(const IterationRecord& rec, const StepDiagnostics& g) {
  const double kd = static_cast<double>(g.k);
  {
    const double lhs = g.f_cur - g.f_prev;
    const double rhs = 0.5 * (g.grad_prev_dot_v + g.grad_cur_dot_v) + g.h / 3.0 * g.v_norm_sq;
    if (lhs > rhs + 1e-10 * (1.0 + std::abs(g.f_cur))) trapezoid_.violations.push_back({rec.K, rec.k, lhs, rhs});
  }
  {
    const double lhs = g.grad_norm_xbar;
    const double rhs = g.ell / kd * std::sqrt(g.v_norm_sq) + g.h * std::sqrt(kd * g.s_sum / 8.0);
    if (lhs > rhs + 1e-10 * (1.0 + lhs)) average_.violations.push_back({rec.K, rec.k, lhs, rhs});
  }
  {
    const double km1 = kd - 1.0;
    const double lhs = km1 * (km1 + 1.0) * g.h_prev;
    const double rhs = 0.375 * g.ell;
    if (lhs > rhs * (1.0 + 1e-12)) continuation_.violations.push_back({rec.K, rec.k, lhs, rhs});
  }
}

std::vector<VerificationReport> StepInequalityMonitor::reports() const {
  return {trapezoid_, average_, continuation_};
}

StepObserver StepInequalityMonitor::as_observer() {
  return [this](const IterationRecord& r, const StepDiagnostics& d) { observe(r, d); };
}

void IterateBoxTracker::include(std::span<const double> x) {
  if (box_.lower.empty()) {
    box_.lower.assign(x.begin(), x.end());
    box_.upper.assign(x.begin(), x.end());
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    box_.lower[i] = std::min(box_.lower[i], x[i]);
    box_.upper[i] = std::max(box_.upper[i], x[i]);
  }
}

void IterateBoxTracker::observe(const IterationRecord&, const StepDiagnostics& d) {
  include(d.x_cur);
  include(d.xbar);
}

StepObserver IterateBoxTracker::as_observer() {
  return [this](const IterationRecord& r, const StepDiagnostics& d) { observe(r, d); };
}

StepObserver chain_observers(std::vector<StepObserver> observers) {
  std::erase_if(observers, [](const StepObserver& o) { return !o; });
  if (observers.empty()) return {};
  return [obs = std::move(observers)](const IterationRecord& r, const StepDiagnostics& d) {
    for (const auto& o : obs) o(r, d);
  };
}

double theorem_bound(const TheoremInputs& in) {
  if (!(in.eps > 0.0)) throw InvalidInput("theorem_bound: eps must be positive");
  if (in.holder_grid.empty()) throw InvalidInput("theorem_bound: empty Hölder grid");
  if (!(in.delta >= 0.0)) throw InvalidInput("theorem_bound: delta must be nonnegative");
  if (!(in.alpha > 1.0) || !(in.beta > 0.0 && in.beta <= 1.0) || !(in.l_init > 0.0))
    throw InvalidInput("theorem_bound: bad algorithm parameters");
  if (!(in.l_bar >= in.l_init)) throw InvalidInput("theorem_bound: l_bar must be >= l_init");

  const double log_alpha = std::log(in.alpha);
  const double c1 = std::log(1.0 / in.beta) / log_alpha;
  const double c2 = 1.0 + std::log(in.l_bar / in.l_init) / log_alpha;

  double best = std::numeric_limits<double>::infinity();
  for (const auto& [nu, H] : in.holder_grid) {
    if (!(nu >= 0.0 && nu <= 1.0) || !(H >= 0.0)) throw InvalidInput("theorem_bound: bad grid entry");
    double term = 0.0;
    if (H > 0.0) {
      term = 91.0 * (1.0 + std::sqrt(c1)) * in.delta * std::sqrt(in.l_bar) * std::pow(H, 1.0 / (2.0 + 2.0 * nu)) *
                 std::pow(in.eps, -(4.0 + 3.0 * nu) / (2.0 + 2.0 * nu)) +
             256.0 * c1 * in.delta * std::pow(H, 1.0 / (1.0 + nu)) * std::pow(in.eps, -(2.0 + nu) / (1.0 + nu));
    }
    best = std::min(best, term);
  }
  return best + 6.0 * std::sqrt(c2 * in.delta * in.l_bar) / in.eps + c2;
}

std::vector<double> default_nu_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

double fit_scaling_exponent(std::span<const ScalingPoint> points) {
  if (points.size() < 2) throw InvalidInput("fit_scaling_exponent: need at least 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    if (!(p.eps > 0.0) || p.oracle_calls <= 0) throw InvalidInput("fit_scaling_exponent: bad point");
    mx += std::log(1.0 / p.eps);
    my += std::log(static_cast<double>(p.oracle_calls));
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(1.0 / p.eps) - mx;
    sxy += dx * (std::log(static_cast<double>(p.oracle_calls)) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw InvalidInput("fit_scaling_exponent: eps values must be distinct");
  return sxy / sxx;
}

}  // namespace rhb
