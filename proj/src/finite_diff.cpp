#include "rhb/finite_diff.hpp"

#include <cmath>

#include "rhb/errors.hpp"
#include "rhb/kernels.hpp"

namespace rhb {

double default_fd_step(const DenseVector& x) { return 1e-6 * (1.0 + kernels::max_abs(x.span())); }

DenseVector fd_gradient(const Problem& problem, const DenseVector& x, std::optional<double> step) {
  const double h = step.value_or(default_fd_step(x));
  if (!(h > 0.0)) throw InvalidInput("fd_gradient: step must be positive");
  DenseVector out(x.dim());
  DenseVector probe = x;
  DenseVector scratch(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    const double fp = problem.oracle(probe.span(), scratch.span());
    probe[i] = xi - h;
    const double fm = problem.oracle(probe.span(), scratch.span());
    probe[i] = xi;
    out[i] = (fp - fm) / (2.0 * h);
  }
  return out;
}

Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& raw) { return 0.5 * (raw + raw.transpose()); }

Eigen::MatrixXd fd_hessian(const Problem& problem, const DenseVector& x, std::optional<double> step) {
  const std::size_t d = x.dim();
  if (d > kMaxHessianDim)
    throw DimensionTooLarge("fd_hessian: dimension " + std::to_string(d) + " exceeds " +
                            std::to_string(kMaxHessianDim));
  const double h = step.value_or(default_fd_step(x));
  if (!(h > 0.0)) throw InvalidInput("fd_hessian: step must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd raw(n, n);
  DenseVector probe = x;
  DenseVector gp(d), gm(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double xi = x[i];
    probe[i] = xi + h;
    problem.oracle(probe.span(), gp.span());
    probe[i] = xi - h;
    problem.oracle(probe.span(), gm.span());
    probe[i] = xi;
    for (std::size_t j = 0; j < d; ++j)
      raw(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = (gp[j] - gm[j]) / (2.0 * h);
  }
  return symmetrize(raw);
}

double symmetric_operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace rhb
