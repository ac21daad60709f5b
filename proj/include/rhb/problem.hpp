#pragma once

#include <optional>
#include <span>
#include <string>

#include "rhb/vector.hpp"

namespace rhb {

struct OracleResult {
  double value = 0.0;
  DenseVector gradient{1};
};

// A smooth objective with an analytic gradient. One oracle call yields both
// f(x) and ∇f(x). Implementations are immutable after construction, so
// evaluate() may be called concurrently.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;

  // Writes ∇f(x) into grad and returns f(x). Unchecked.
  virtual double evaluate(std::span<const double> x, std::span<double> grad) const = 0;

  virtual std::optional<double> known_optimum() const { return std::nullopt; }
  virtual std::optional<double> known_grad_lipschitz() const { return std::nullopt; }
  // A documented minimizer, used to build start points x* + δ.
  virtual std::optional<DenseVector> reference_minimizer() const { return std::nullopt; }

  // Checked oracle: validates dimensions, throws OracleFailure on a
  // non-finite value or gradient.
  double oracle(std::span<const double> x, std::span<double> grad) const;
  OracleResult oracle(const DenseVector& x) const;
  double value(const DenseVector& x) const;
};

}  // namespace rhb
