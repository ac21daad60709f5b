#include <doctest.h>

#include <cmath>

#include "rhb/errors.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/problems.hpp"

using namespace rhb;

namespace {

class Square final : public Problem {
 public:
  std::string name() const override { return "square"; }
  std::size_t dim() const override { return 1; }
  double evaluate(std::span<const double> x, std::span<double> g) const override {
    g[0] = 2.0 * x[0];
    return x[0] * x[0];
  }
};

class Constant final : public Problem {
 public:
  explicit Constant(std::size_t d) : d_(d) {}
  std::string name() const override { return "constant"; }
  std::size_t dim() const override { return d_; }
  double evaluate(std::span<const double>, std::span<double> g) const override {
    for (auto& v : g) v = 0.0;
    return 3.5;
  }

 private:
  std::size_t d_;
};

}  // namespace

TEST_CASE("fd_gradient examples") {
  Square sq;
  for (double h : {1e-2, 1e-4, 1e-6}) CHECK(fd_gradient(sq, DenseVector{3.0}, h)[0] == doctest::Approx(6.0).epsilon(1e-9));

  auto r = make_rosenbrock(2);
  const auto g = fd_gradient(*r, DenseVector{0.0, 0.0});
  CHECK(std::abs(g[0] + 2.0) <= 1e-8 * 2.0);
  CHECK(std::abs(g[1]) <= 1e-8 * 2.0);

  Constant c(4);
  const auto z = fd_gradient(c, DenseVector{1, 2, 3, 4});
  for (std::size_t i = 0; i < 4; ++i) CHECK(z[i] == 0.0);
  CHECK_THROWS_AS(fd_gradient(sq, DenseVector{1.0}, 0.0), InvalidInput);
}

TEST_CASE("fd_hessian examples") {
  auto f = make_half_squared_norm(3);
  const auto h = fd_hessian(*f, DenseVector{0.3, -2.0, 5.0});
  CHECK((h - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);

  auto cubic = make_cubic_sum(1);
  CHECK(std::abs(fd_hessian(*cubic, DenseVector{2.0})(0, 0) - 2.0) <= 1e-6);

  auto q = make_random_quadratic(6, 7);
  DenseVector x(6);
  x.fill(0.5);
  const auto hq = fd_hessian(*q, x);
  CHECK((hq - q->matrix()).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(hq == hq.transpose());
}

TEST_CASE("symmetrize and operator norm") {
  Eigen::MatrixXd raw(2, 2);
  raw << 1.0, 2.0, 4.0, 3.0;
  const auto s = symmetrize(raw);
  CHECK(s == s.transpose());
  CHECK(s(0, 1) == 3.0);
  Eigen::MatrixXd d(2, 2);
  d << -5.0, 0.0, 0.0, 2.0;
  CHECK(symmetric_operator_norm(d) == doctest::Approx(5.0));
}

TEST_CASE("fd_hessian refuses large dimensions") {
  auto f = make_rosenbrock(kMaxHessianDim + 1);
  CHECK_THROWS_AS(fd_hessian(*f, DenseVector(kMaxHessianDim + 1)), DimensionTooLarge);
}
