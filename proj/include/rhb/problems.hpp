#pragma once

#include <cstdint>
#include <memory>

#include <Eigen/Dense>

#include "rhb/problem.hpp"

namespace rhb {

// Benchmark functions. Each throws InvalidInput below its minimum dimension.

// (x_1 - 1)^2 + sum_{i=2}^d i (2 x_i^2 - x_{i-1})^2; minimizer x_i = 2^(2^(1-i) - 1). d >= 2.
std::unique_ptr<Problem> make_dixon_price(std::size_t d);
// Sum over floor(d/4) blocks; trailing coordinates do not enter f. d >= 4.
std::unique_ptr<Problem> make_powell(std::size_t d);
// sum_{i=1}^{d-1} (x_i^2 - i)^2 (x_d is free); reference minimizer (sqrt 1, ..., sqrt d). d >= 2.
std::unique_ptr<Problem> make_qing(std::size_t d);
// sum_{i=1}^{d-1} 100 (x_{i+1} - x_i^2)^2 + (x_i - 1)^2. d >= 2.
std::unique_ptr<Problem> make_rosenbrock(std::size_t d);

// f = 0.5 ||x||^2, L = 1.
std::unique_ptr<Problem> make_half_squared_norm(std::size_t d);
// f = sum x_i^3 / 6. Unbounded below; Hessian diag(x) is 1-Lipschitz.
std::unique_ptr<Problem> make_cubic_sum(std::size_t d);

// f = 0.5 (x - c)^T A (x - c) for symmetric positive semidefinite A.
// known_grad_lipschitz() is the largest eigenvalue of A.
class QuadraticProblem final : public Problem {
 public:
  QuadraticProblem(Eigen::MatrixXd a, Eigen::VectorXd center, double largest_eigenvalue);

  std::string name() const override { return "quadratic"; }
  std::size_t dim() const override { return static_cast<std::size_t>(center_.size()); }
  double evaluate(std::span<const double> x, std::span<double> grad) const override;
  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<double> known_grad_lipschitz() const override { return lmax_; }
  std::optional<DenseVector> reference_minimizer() const override;

  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd center_;
  double lmax_;
};

struct RandomQuadraticOptions {
  double min_eigenvalue = 0.1;
  double max_eigenvalue = 1.0;
};

// A = Q diag(λ) Q^T with Q from the QR factorization of a Gaussian matrix,
// λ log-uniform in [min, max] with both endpoints included, c ~ N(0, I).
std::unique_ptr<QuadraticProblem> make_random_quadratic(std::size_t d, std::uint64_t seed,
                                                        const RandomQuadraticOptions& opts = {});

}  // namespace rhb
