#include "rhb/heavy_ball.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rhb/errors.hpp"
#include "rhb/kernels.hpp"

namespace rhb {

DenseVector update_velocity(const DenseVector& v_prev, const DenseVector& grad_prev, double ell) {
  if (v_prev.dim() != grad_prev.dim()) throw InvalidInput("update_velocity: dimension mismatch");
  if (!(ell > 0.0)) throw InvalidInput("update_velocity: ell must be positive");
  DenseVector v = v_prev;
  kernels::axpy(-1.0 / ell, grad_prev.span(), v.span());
  return v;
}

bool descent_holds(double f_prev, double f_cur, double grad_prev_dot_v, double v_norm_sq, double ell,
                   double slack_rel) {
  const double slack = slack_rel * (std::abs(f_prev) + std::abs(f_cur));
  return f_cur - f_prev <= grad_prev_dot_v + 0.5 * ell * v_norm_sq + slack;
}

bool descent_holds(double f_prev, double f_cur, const DenseVector& grad_prev, const DenseVector& v, double ell,
                   double slack_rel) {
  if (grad_prev.dim() != v.dim()) throw InvalidInput("descent_holds: dimension mismatch");
  return descent_holds(f_prev, f_cur, kernels::dot(grad_prev.span(), v.span()), kernels::norm_sq(v.span()), ell,
                       slack_rel);
}

double update_h(const HolderUpdate& in) {
  double h = in.h_prev;
  if (in.v_norm_sq > 0.0) {
    const double gap = in.f_cur - in.f_prev - 0.5 * (in.grad_prev_dot_v + in.grad_cur_dot_v);
    h = std::max(h, 3.0 / in.v_norm_sq * gap);
  }
  if (in.s_sum > 0.0) {
    const double kd = static_cast<double>(in.k);
    const double excess = in.grad_xbar_norm - in.ell / kd * std::sqrt(in.v_norm_sq);
    h = std::max(h, std::sqrt(8.0 / (kd * in.s_sum)) * excess);
  }
  return h;
}

bool momentum_restart_due(std::int64_t k, double h, double ell) {
  const double kd = static_cast<double>(k);
  return kd * (kd + 1.0) * h > 0.375 * ell;
}

EpochState EpochState::start(const Problem& problem, const DenseVector& x_init, double l_init) {
  const std::size_t d = problem.dim();
  if (x_init.dim() != d)
    throw InvalidInput("start point has dimension " + std::to_string(x_init.dim()) + ", problem expects " +
                       std::to_string(d));
  EpochState s;
  s.x = x_init;
  s.v = DenseVector(d);
  s.xbar = x_init;
  s.g_x = DenseVector(d);
  s.f_x = problem.oracle(s.x.span(), s.g_x.span());
  s.oracle_calls = 1;
  s.ell = l_init;
  s.best_point = s.x;
  s.best_value = s.f_x;
  s.best_grad = s.g_x;
  s.x_next = DenseVector(d);
  s.g_next = DenseVector(d);
  s.g_xbar = DenseVector(d);
  return s;
}

namespace {

void restart_from_best(EpochState& s) {
  kernels::copy(s.best_point.span(), s.x.span());
  kernels::copy(s.best_grad.span(), s.g_x.span());
  s.f_x = s.best_value;
  s.v.fill(0.0);
  s.k = 0;
  s.h = 0.0;
  s.s_sum = 0.0;
}

void offer_best(EpochState& s, double f, std::span<const double> point, std::span<const double> grad) {
  // Strict comparison keeps the earlier point on ties.
  if (f < s.best_value) {
    s.best_value = f;
    kernels::copy(point, s.best_point.span());
    kernels::copy(grad, s.best_grad.span());
  }
}

}  // namespace

IterationRecord hb_step(EpochState& s, const Problem& problem, const HBConfig& config,
                        const StepObserver& observer) {
  ++s.k;
  ++s.K;
  const std::int64_t k = s.k;

  // v_k, x_k
  kernels::axpy(-1.0 / s.ell, s.g_x.span(), s.v.span());
  {
    auto xn = s.x_next.span();
    auto x = s.x.span();
    auto v = s.v.span();
    kernels::for_each_index(xn.size(), [&](std::size_t i) { xn[i] = x[i] + v[i]; });
  }
  const double f_next = problem.oracle(s.x_next.span(), s.g_next.span());
  ++s.oracle_calls;

  // x̄_k; at k = 1 it is x_0 and its oracle values are cached.
  double f_xbar;
  double grad_norm_xbar;
  if (k == 1) {
    kernels::copy(s.x.span(), s.xbar.span());
    f_xbar = s.f_x;
    grad_norm_xbar = kernels::norm(s.g_x.span());
  } else {
    kernels::blend(1.0 / static_cast<double>(k), s.x.span(), s.xbar.span());
    f_xbar = problem.oracle(s.xbar.span(), s.g_xbar.span());
    ++s.oracle_calls;
    grad_norm_xbar = kernels::norm(s.g_xbar.span());
  }

  const double v_norm_sq = kernels::norm_sq(s.v.span());
  const double gprev_v = kernels::dot(s.g_x.span(), s.v.span());
  const double gcur_v = kernels::dot(s.g_next.span(), s.v.span());
  s.s_sum += v_norm_sq;

  offer_best(s, f_next, s.x_next.span(), s.g_next.span());
  if (k > 1) offer_best(s, f_xbar, s.xbar.span(), s.g_xbar.span());

  const double h_prev = s.h;
  s.h = update_h({h_prev, s.f_x, f_next, gprev_v, gcur_v, v_norm_sq, grad_norm_xbar, k, s.s_sum, s.ell});

  const bool descent_ok = descent_holds(s.f_x, f_next, gprev_v, v_norm_sq, s.ell, config.descent_slack_rel);
  Event event = Event::none;
  if (!descent_ok) event = Event::restart_unsuccessful;
  else if (momentum_restart_due(k, s.h, s.ell)) event = Event::restart_successful;

  IterationRecord rec;
  rec.K = s.K;
  rec.k = k;
  rec.oracle_calls = s.oracle_calls;
  rec.f_x = f_next;
  rec.grad_norm_x = kernels::norm(s.g_next.span());
  rec.grad_norm_xbar = grad_norm_xbar;
  rec.f_xbar = f_xbar;
  rec.v_norm = std::sqrt(v_norm_sq);
  rec.s_sum = s.s_sum;
  rec.h = s.h;
  rec.ell = s.ell;
  rec.best_value = s.best_value;
  rec.event = event;

  if (observer) {
    StepDiagnostics diag;
    diag.K = s.K;
    diag.k = k;
    diag.f_prev = s.f_x;
    diag.f_cur = f_next;
    diag.grad_prev_dot_v = gprev_v;
    diag.grad_cur_dot_v = gcur_v;
    diag.v_norm_sq = v_norm_sq;
    diag.grad_norm_xbar = grad_norm_xbar;
    diag.f_xbar = f_xbar;
    diag.s_sum = s.s_sum;
    diag.h_prev = h_prev;
    diag.h = s.h;
    diag.ell = s.ell;
    diag.descent_ok = descent_ok;
    diag.x_cur = s.x_next.span();
    diag.xbar = s.xbar.span();
    observer(rec, diag);
  }

  std::swap(s.x, s.x_next);
  std::swap(s.g_x, s.g_next);
  s.f_x = f_next;

  if (event == Event::restart_unsuccessful) {
    restart_from_best(s);
    s.ell *= config.alpha;
  } else if (event == Event::restart_successful) {
    restart_from_best(s);
    s.ell = std::max(s.ell * config.beta, kMinEll);
  }
  return rec;
}

RunResult run_heavy_ball(const Problem& problem, const DenseVector& x_init, const HBConfig& config,
                         const StepObserver& observer) {
  config.validate();
  EpochState s = EpochState::start(problem, x_init, config.l_init);
  RunResult out;
  out.terminated_by = TerminatedBy::budget;
  while (s.oracle_calls < config.max_oracle_calls) {
    IterationRecord rec = hb_step(s, problem, config, observer);
    const bool converged = rec.grad_norm_xbar <= config.eps_grad;
    const bool exhausted = s.oracle_calls >= config.max_oracle_calls;
    if ((converged || exhausted) && rec.event == Event::none) rec.event = Event::terminated;
    out.trace.push_back(rec);
    if (converged) {
      out.terminated_by = TerminatedBy::grad_tol;
      break;
    }
  }
  out.best_point = s.best_point;
  out.best_value = s.best_value;
  out.returned_grad_norm = kernels::norm(s.best_grad.span());
  out.total_iterations = s.K;
  out.oracle_calls = s.oracle_calls;
  return out;
}

}  // namespace rhb
