#pragma once

// Numerical checks of the method's guarantees.
//
// Trace verifiers work on recorded traces only and never call the oracle.
// Sampled constants (Lipschitz, Hölder) are maxima over finitely many pairs,
// hence lower bounds of the true suprema; every check that multiplies by a
// sampled constant applies a 5% slack to that product.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rhb/heavy_ball.hpp"
#include "rhb/problem.hpp"
#include "rhb/types.hpp"

namespace rhb {

inline constexpr double kSampledConstantSlack = 0.05;

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const { return lower.size(); }
  // Each side moves out by fraction * width.
  Box inflated(double fraction) const;
  bool contains(std::span<const double> x) const;

  static Box cube(std::size_t d, double lo, double hi);
};

struct HolderEstimate {
  double nu = 0.0;
  double h_hat = 0.0;
  Box region;
  std::int64_t samples = 0;
};

struct ScalingPoint {
  double eps = 0.0;
  std::int64_t oracle_calls = 0;
};

struct Violation {
  std::int64_t K = 0;
  std::int64_t k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct VerificationReport {
  std::string check;
  std::vector<Violation> violations;
  std::string tolerance;

  bool ok() const { return violations.empty(); }
  nlohmann::json to_json() const;
};

// Sampled pairs cycle through three designs by index: independent uniform
// points, two box vertices, and pairs differing in a single coordinate.

// max ||∇f(x) - ∇f(y)|| / ||x - y|| over sampled pairs.
double estimate_grad_lipschitz(const Problem& problem, const Box& region, std::int64_t n_samples,
                               std::uint64_t seed);

// max ||∇²f(x) - ∇²f(y)||_op / ||x - y||^nu with finite-difference Hessians.
// Throws DimensionTooLarge above kMaxHessianDim.
HolderEstimate estimate_holder_hessian(const Problem& problem, const Box& region, double nu,
                                       std::int64_t n_samples, std::uint64_t seed);

// Objective decrease per epoch: min_{1<=i<=k} f(x_i) <= f(x_0) - ℓ S_k / (4k)
// on every epoch prefix whose descent tests all passed (tolerance 1e-9 (1 + |f(x_0)|)).
// f(x_0) is read from the k = 1 record, where x̄_1 = x_0.
VerificationReport verify_epoch_decrease(const RunTrace& trace);

// min_{1<=i<k} ||∇f(x̄_i)|| <= ℓ sqrt(8 S_{k-1} / k^3) for in-epoch k >= 2
// (tolerance 1e-9 (1 + bound)).
VerificationReport verify_avg_grad_bound(const RunTrace& trace);

// h_k <= ĥ (k S_k)^{ν/2} (1 + 5%) + 1e-10 at every record.
VerificationReport verify_h_bound(const RunTrace& trace, const HolderEstimate& estimate);

// ℓ <= max(ℓ_init, α L) at every record, no tolerance.
VerificationReport verify_ell_bound(const RunTrace& trace, double l_init, double alpha, double lipschitz);

// Gradient-averaging inequality and trapezoid-rule inequality on sampled
// configurations inside estimate.region, with 5% slack on the Hölder term.
std::vector<VerificationReport> verify_pointwise_lemmas(const Problem& problem, const HolderEstimate& estimate,
                                                        std::int64_t n_samples, std::uint64_t seed);

// Throws MalformedTrace unless K runs 1, 2, ... and k restarts at 1 exactly
// after restart events, with ℓ constant inside each epoch.
void validate_trace(const RunTrace& trace);

// Observer that re-checks, at every iteration, the two inequalities h_k is
// built to satisfy and the continuation condition k (k - 1) h_{k-1} <= 3ℓ/8.
class StepInequalityMonitor {
 public:
  void observe(const IterationRecord& rec, const StepDiagnostics& diag);
  std::vector<VerificationReport> reports() const;
  StepObserver as_observer();

 private:
  VerificationReport trapezoid_{"trapezoid_bound", {}, "1e-10 (1 + |f(x_k)|)"};
  VerificationReport average_{"averaged_gradient_bound", {}, "1e-10 (1 + ||grad f(xbar_k)||)"};
  VerificationReport continuation_{"continuation_condition", {}, "1e-12 relative"};
};

// Observer accumulating the bounding box of every x_k and x̄_k.
class IterateBoxTracker {
 public:
  void observe(const IterationRecord& rec, const StepDiagnostics& diag);
  StepObserver as_observer();
  void include(std::span<const double> x);
  bool empty() const { return box_.lower.empty(); }
  const Box& box() const { return box_; }

 private:
  Box box_;
};

// Combines observers; empty ones are skipped.
StepObserver chain_observers(std::vector<StepObserver> observers);

struct HolderGridPoint {
  double nu = 0.0;
  double H = 0.0;
};

struct TheoremInputs {
  double delta = 0.0;   // f(x_init) - inf f
  double l_bar = 1.0;   // max(l_init, alpha L)
  std::vector<HolderGridPoint> holder_grid;
  double eps = 1e-6;
  double l_init = 1e-3;
  double alpha = 2.0;
  double beta = 0.1;
};

// Iteration bound for reaching ||∇f(x̄_k)|| <= eps, minimized over the grid.
// Grid entries with H = 0 contribute 0. Throws InvalidInput on eps <= 0 or an empty grid.
double theorem_bound(const TheoremInputs& in);

std::vector<double> default_nu_grid();

// Least-squares slope of log(oracle_calls) against log(1/eps).
double fit_scaling_exponent(std::span<const ScalingPoint> points);

}  // namespace rhb
