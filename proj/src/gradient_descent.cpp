#include "rhb/gradient_descent.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rhb/errors.hpp"
#include "rhb/heavy_ball.hpp"
#include "rhb/kernels.hpp"

namespace rhb {

RunResult run_gradient_descent(const Problem& problem, const DenseVector& x_init, const HBConfig& config) {
  config.validate();
  const std::size_t d = problem.dim();
  if (x_init.dim() != d) throw InvalidInput("start point dimension does not match the problem");

  DenseVector x = x_init, g(d), x_try(d), g_try(d), step(d);
  double f = problem.oracle(x.span(), g.span());
  std::int64_t calls = 1;
  double ell = config.l_init;
  double grad_norm = kernels::norm(g.span());

  RunResult out;
  out.terminated_by = TerminatedBy::budget;
  std::int64_t K = 0;

  if (grad_norm <= config.eps_grad) out.terminated_by = TerminatedBy::grad_tol;

  while (out.terminated_by != TerminatedBy::grad_tol && calls < config.max_oracle_calls) {
    int backtracks = 0;
    bool accepted = false;
    double f_try = 0.0;
    while (calls < config.max_oracle_calls) {
      {
        auto xs = x.span(), gs = g.span(), xt = x_try.span(), st = step.span();
        const double inv = 1.0 / ell;
        kernels::for_each_index(d, [&](std::size_t i) {
          st[i] = -inv * gs[i];
          xt[i] = xs[i] + st[i];
        });
      }
      f_try = problem.oracle(x_try.span(), g_try.span());
      ++calls;
      const double gv = kernels::dot(g.span(), step.span());
      const double vv = kernels::norm_sq(step.span());
      if (descent_holds(f, f_try, gv, vv, ell, config.descent_slack_rel)) {
        accepted = true;
        break;
      }
      if (++backtracks >= kMaxConsecutiveBacktracks)
        throw OracleFailure(problem.name() + ": " + std::to_string(backtracks) +
                            " consecutive backtracks without satisfying the descent test");
      ell *= config.alpha;
    }
    if (!accepted) break;

    ++K;
    std::swap(x, x_try);
    std::swap(g, g_try);
    const double v_norm = std::sqrt(kernels::norm_sq(step.span()));
    f = f_try;
    grad_norm = kernels::norm(g.span());

    IterationRecord rec;
    rec.K = K;
    rec.k = K;
    rec.oracle_calls = calls;
    rec.f_x = f;
    rec.grad_norm_x = grad_norm;
    rec.grad_norm_xbar = grad_norm;
    rec.f_xbar = f;
    rec.v_norm = v_norm;
    rec.ell = ell;
    rec.best_value = f;
    ell = std::max(ell * config.beta, kMinEll);

    out.trace.push_back(rec);
    if (grad_norm <= config.eps_grad) out.terminated_by = TerminatedBy::grad_tol;
  }
  if (!out.trace.empty()) out.trace.back().event = Event::terminated;

  out.best_point = x;
  out.best_value = f;
  out.returned_grad_norm = grad_norm;
  out.total_iterations = K;
  out.oracle_calls = calls;
  return out;
}

}  // namespace rhb
