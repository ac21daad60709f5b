#include "rhb/problems.hpp"

#include <cmath>
#include <numeric>

#include "rhb/errors.hpp"
#include "rhb/kernels.hpp"
#include "rhb/rng.hpp"

namespace rhb {

namespace {

void require_dim(std::size_t d, std::size_t min, const char* who) {
  if (d < min)
    throw InvalidInput(std::string(who) + " requires dimension >= " + std::to_string(min));
}

class DixonPrice final : public Problem {
 public:
  explicit DixonPrice(std::size_t d) : d_(d) { require_dim(d, 2, "dixon-price"); }
  std::string name() const override { return "dixon-price"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    const std::size_t d = d_;
    // r_i = 2 x_i^2 - x_{i-1}, weight (i + 1) in 0-based indexing.
    return kernels::reduce_indexed(d, [&](std::size_t i) {
      double gi = 0.0;
      double term;
      if (i == 0) {
        term = (x[0] - 1.0) * (x[0] - 1.0);
        gi = 2.0 * (x[0] - 1.0);
      } else {
        const double w = static_cast<double>(i + 1);
        const double r = 2.0 * x[i] * x[i] - x[i - 1];
        term = w * r * r;
        gi = 8.0 * w * r * x[i];
      }
      if (i + 1 < d) {
        const double w = static_cast<double>(i + 2);
        const double r = 2.0 * x[i + 1] * x[i + 1] - x[i];
        gi -= 2.0 * w * r;
      }
      g[i] = gi;
      return term;
    });
  }

  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<DenseVector> reference_minimizer() const override {
    DenseVector xs(d_);
    for (std::size_t i = 0; i < d_; ++i)
      xs[i] = std::exp2(std::exp2(-static_cast<double>(i)) - 1.0);
    return xs;
  }

 private:
  std::size_t d_;
};

class Powell final : public Problem {
 public:
  explicit Powell(std::size_t d) : d_(d) { require_dim(d, 4, "powell"); }
  std::string name() const override { return "powell"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    const std::size_t blocks = d_ / 4;
    for (std::size_t i = 4 * blocks; i < d_; ++i) g[i] = 0.0;
    return kernels::reduce_indexed(blocks, [&](std::size_t b) {
      const std::size_t o = 4 * b;
      const double a = x[o], p = x[o + 1], c = x[o + 2], e = x[o + 3];
      const double t1 = a + 10.0 * p;
      const double t2 = c - e;
      const double t3 = p - 2.0 * c;
      const double t4 = a - e;
      const double t3c = t3 * t3 * t3;
      const double t4c = t4 * t4 * t4;
      g[o] = 2.0 * t1 + 40.0 * t4c;
      g[o + 1] = 20.0 * t1 + 4.0 * t3c;
      g[o + 2] = 10.0 * t2 - 8.0 * t3c;
      g[o + 3] = -10.0 * t2 - 40.0 * t4c;
      return t1 * t1 + 5.0 * t2 * t2 + t3c * t3 + 10.0 * t4c * t4;
    });
  }

  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<DenseVector> reference_minimizer() const override { return DenseVector(d_); }

 private:
  std::size_t d_;
};

class Qing final : public Problem {
 public:
  explicit Qing(std::size_t d) : d_(d) { require_dim(d, 2, "qing"); }
  std::string name() const override { return "qing"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    const std::size_t last = d_ - 1;
    return kernels::reduce_indexed(d_, [&](std::size_t i) {
      if (i == last) {
        g[i] = 0.0;
        return 0.0;
      }
      const double r = x[i] * x[i] - static_cast<double>(i + 1);
      g[i] = 4.0 * x[i] * r;
      return r * r;
    });
  }

  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<DenseVector> reference_minimizer() const override {
    DenseVector xs(d_);
    for (std::size_t i = 0; i < d_; ++i) xs[i] = std::sqrt(static_cast<double>(i + 1));
    return xs;
  }

 private:
  std::size_t d_;
};

class Rosenbrock final : public Problem {
 public:
  explicit Rosenbrock(std::size_t d) : d_(d) { require_dim(d, 2, "rosenbrock"); }
  std::string name() const override { return "rosenbrock"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    const std::size_t d = d_;
    return kernels::reduce_indexed(d, [&](std::size_t i) {
      double gi = 0.0;
      double term = 0.0;
      if (i + 1 < d) {
        const double r = x[i + 1] - x[i] * x[i];
        const double s = x[i] - 1.0;
        term = 100.0 * r * r + s * s;
        gi = -400.0 * x[i] * r + 2.0 * s;
      }
      if (i > 0) gi += 200.0 * (x[i] - x[i - 1] * x[i - 1]);
      g[i] = gi;
      return term;
    });
  }

  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<DenseVector> reference_minimizer() const override {
    DenseVector xs(d_);
    xs.fill(1.0);
    return xs;
  }

 private:
  std::size_t d_;
};

class HalfSquaredNorm final : public Problem {
 public:
  explicit HalfSquaredNorm(std::size_t d) : d_(d) { require_dim(d, 1, "quadratic-test"); }
  std::string name() const override { return "quadratic-test"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    return kernels::reduce_indexed(d_, [&](std::size_t i) {
      g[i] = x[i];
      return 0.5 * x[i] * x[i];
    });
  }

  std::optional<double> known_optimum() const override { return 0.0; }
  std::optional<double> known_grad_lipschitz() const override { return 1.0; }
  std::optional<DenseVector> reference_minimizer() const override { return DenseVector(d_); }

 private:
  std::size_t d_;
};

class CubicSum final : public Problem {
 public:
  explicit CubicSum(std::size_t d) : d_(d) { require_dim(d, 1, "cubic"); }
  std::string name() const override { return "cubic"; }
  std::size_t dim() const override { return d_; }

  double evaluate(std::span<const double> x, std::span<double> g) const override {
    return kernels::reduce_indexed(d_, [&](std::size_t i) {
      g[i] = 0.5 * x[i] * x[i];
      return x[i] * x[i] * x[i] / 6.0;
    });
  }

 private:
  std::size_t d_;
};

}  // namespace

std::unique_ptr<Problem> make_dixon_price(std::size_t d) { return std::make_unique<DixonPrice>(d); }
std::unique_ptr<Problem> make_powell(std::size_t d) { return std::make_unique<Powell>(d); }
std::unique_ptr<Problem> make_qing(std::size_t d) { return std::make_unique<Qing>(d); }
std::unique_ptr<Problem> make_rosenbrock(std::size_t d) { return std::make_unique<Rosenbrock>(d); }
std::unique_ptr<Problem> make_half_squared_norm(std::size_t d) {
  return std::make_unique<HalfSquaredNorm>(d);
}
std::unique_ptr<Problem> make_cubic_sum(std::size_t d) { return std::make_unique<CubicSum>(d); }

QuadraticProblem::QuadraticProblem(Eigen::MatrixXd a, Eigen::VectorXd center, double largest_eigenvalue)
    : a_(std::move(a)), center_(std::move(center)), lmax_(largest_eigenvalue) {
  if (a_.rows() != a_.cols() || a_.rows() != center_.size() || center_.size() == 0)
    throw InvalidInput("quadratic: matrix and center dimensions disagree");
}

double QuadraticProblem::evaluate(std::span<const double> x, std::span<double> grad) const {
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  Eigen::Map<Eigen::VectorXd> gv(grad.data(), n);
  const Eigen::VectorXd dx = xv - center_;
  gv.noalias() = a_ * dx;
  return 0.5 * dx.dot(gv);
}

std::optional<DenseVector> QuadraticProblem::reference_minimizer() const {
  return DenseVector(std::vector<double>(center_.data(), center_.data() + center_.size()));
}

std::unique_ptr<QuadraticProblem> make_random_quadratic(std::size_t d, std::uint64_t seed,
                                                        const RandomQuadraticOptions& opts) {
  if (d == 0) throw InvalidInput("quadratic: dimension must be >= 1");
  if (!(opts.min_eigenvalue >= 0.0 && opts.max_eigenvalue >= opts.min_eigenvalue && opts.max_eigenvalue > 0.0))
    throw InvalidInput("quadratic: bad eigenvalue range");
  Rng rng(seed);
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd gauss(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) gauss(i, j) = rng.normal();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(gauss).householderQ();

  Eigen::VectorXd lambda(n);
  const double lo = opts.min_eigenvalue, hi = opts.max_eigenvalue;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == 0) lambda(i) = hi;
    else if (i == 1 && n > 1) lambda(i) = lo;
    else if (lo > 0.0) lambda(i) = lo * std::pow(hi / lo, rng.uniform());
    else lambda(i) = rng.uniform(lo, hi);
  }
  Eigen::MatrixXd a = q * lambda.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();

  Eigen::VectorXd c(n);
  for (Eigen::Index i = 0; i < n; ++i) c(i) = rng.normal();
  const double lmax = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  return std::make_unique<QuadraticProblem>(std::move(a), std::move(c), lmax);
}

}  // namespace rhb
