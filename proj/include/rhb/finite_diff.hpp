#pragma once

#include <optional>

#include <Eigen/Dense>

#include "rhb/problem.hpp"

namespace rhb {

inline constexpr std::size_t kMaxHessianDim = 64;

// Default step: 1e-6 * (1 + ||x||_inf).
double default_fd_step(const DenseVector& x);

// Central differences of f along each coordinate.
DenseVector fd_gradient(const Problem& problem, const DenseVector& x, std::optional<double> step = std::nullopt);

// Central differences of the analytic gradient, symmetrized as (A + A^T) / 2.
// Throws DimensionTooLarge above kMaxHessianDim.
Eigen::MatrixXd fd_hessian(const Problem& problem, const DenseVector& x, std::optional<double> step = std::nullopt);

// Symmetrizes a raw column-difference matrix; exposed for testing.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& raw);

// Spectral norm of a symmetric matrix (largest |eigenvalue|).
double symmetric_operator_norm(const Eigen::MatrixXd& m);

}  // namespace rhb
