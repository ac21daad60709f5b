#pragma once

// Restarted heavy-ball method with momentum parameter fixed to 1.
//
// Each epoch runs v_k = v_{k-1} - ∇f(x_{k-1}) / ℓ, x_k = x_{k-1} + v_k from
// v_0 = 0 and tracks the in-epoch average x̄_k = mean(x_0..x_{k-1}), the
// squared-velocity sum S_k and an online curvature-variation estimate h_k.
// An epoch ends with
//   - an unsuccessful restart (ℓ <- αℓ) when the descent test fails, or
//   - a successful restart (ℓ <- βℓ) when k (k + 1) h_k > 3ℓ/8,
// both resuming from the best point seen so far with zero velocity.

#include <cstdint>
#include <functional>
#include <span>

#include "rhb/problem.hpp"
#include "rhb/types.hpp"

namespace rhb {

// v_prev - grad_prev / ell
DenseVector update_velocity(const DenseVector& v_prev, const DenseVector& grad_prev, double ell);

// f_cur - f_prev <= <grad_prev, v> + (ell/2)||v||^2 + slack_rel (|f_prev| + |f_cur|)
bool descent_holds(double f_prev, double f_cur, double grad_prev_dot_v, double v_norm_sq, double ell,
                   double slack_rel);
bool descent_holds(double f_prev, double f_cur, const DenseVector& grad_prev, const DenseVector& v, double ell,
                   double slack_rel);

struct HolderUpdate {
  double h_prev = 0.0;
  double f_prev = 0.0;
  double f_cur = 0.0;
  double grad_prev_dot_v = 0.0;  // <∇f(x_{k-1}), v_k>
  double grad_cur_dot_v = 0.0;   // <∇f(x_k), v_k>
  double v_norm_sq = 0.0;
  double grad_xbar_norm = 0.0;
  std::int64_t k = 1;
  double s_sum = 0.0;  // S_k, already including ||v_k||^2
  double ell = 1.0;
};

// h_k = max{h_{k-1}, trapezoid term, averaged-gradient term}. The trapezoid
// term is taken as 0 when v_k = 0 and the averaged-gradient term as 0 when S_k = 0.
double update_h(const HolderUpdate& in);

// k (k + 1) h > 3 ell / 8
bool momentum_restart_due(std::int64_t k, double h, double ell);

inline constexpr double kMinEll = 1e-300;

struct EpochState {
  std::int64_t k = 0;
  std::int64_t K = 0;
  DenseVector x{1};
  DenseVector v{1};
  DenseVector xbar{1};
  double s_sum = 0.0;
  double h = 0.0;
  double ell = 1.0;
  double f_x = 0.0;
  DenseVector g_x{1};
  DenseVector best_point{1};
  double best_value = 0.0;
  DenseVector best_grad{1};
  std::int64_t oracle_calls = 0;

  // Evaluates the oracle at x_init (one call) and sets up epoch 0.
  static EpochState start(const Problem& problem, const DenseVector& x_init, double l_init);

  // Scratch buffers reused by hb_step.
  DenseVector x_next{1};
  DenseVector g_next{1};
  DenseVector g_xbar{1};
};

// Quantities from one iteration, enough to re-check the per-iteration
// inequalities without calling the oracle again. Spans are valid only
// inside the observer callback.
struct StepDiagnostics {
  std::int64_t K = 0;
  std::int64_t k = 0;
  double f_prev = 0.0;
  double f_cur = 0.0;
  double grad_prev_dot_v = 0.0;
  double grad_cur_dot_v = 0.0;
  double v_norm_sq = 0.0;
  double grad_norm_xbar = 0.0;
  double f_xbar = 0.0;
  double s_sum = 0.0;
  double h_prev = 0.0;
  double h = 0.0;
  double ell = 0.0;
  bool descent_ok = true;
  std::span<const double> x_cur;
  std::span<const double> xbar;
};

using StepObserver = std::function<void(const IterationRecord&, const StepDiagnostics&)>;

// One loop body: advances (x, v), evaluates x_k and x̄_k (x̄_1 = x_0 is served
// from cache), updates S, h and the best point, then applies at most one
// restart (descent test first).
IterationRecord hb_step(EpochState& state, const Problem& problem, const HBConfig& config,
                        const StepObserver& observer = {});

// Runs until ||∇f(x̄_k)|| <= eps_grad or the oracle budget is spent.
RunResult run_heavy_ball(const Problem& problem, const DenseVector& x_init, const HBConfig& config,
                         const StepObserver& observer = {});

}  // namespace rhb
