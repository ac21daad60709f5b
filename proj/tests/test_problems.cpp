#include <doctest.h>

#include <cmath>

#include "rhb/errors.hpp"
#include "rhb/experiment.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/problems.hpp"
#include "rhb/rng.hpp"

using namespace rhb;

TEST_CASE("dixon-price values") {
  auto f = make_dixon_price(3);
  CHECK(f->value(*f->reference_minimizer()) == doctest::Approx(0.0).scale(1e-12));
  CHECK(std::abs(f->value(*f->reference_minimizer())) <= 1e-12);
  auto f2 = make_dixon_price(2);
  CHECK(f2->value(DenseVector{1, 1}) == 2.0);
  const auto xs = *make_dixon_price(4)->reference_minimizer();
  CHECK(xs[0] == 1.0);
  CHECK(xs[1] == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(xs[2] == doctest::Approx(std::pow(2.0, -0.75)));
}

TEST_CASE("powell values") {
  auto f = make_powell(4);
  CHECK(f->value(DenseVector(4)) == 0.0);
  CHECK(f->value(DenseVector{1, 0, 0, 0}) == 11.0);
  CHECK_THROWS_AS(make_powell(3), InvalidInput);
}

TEST_CASE("qing values") {
  auto f = make_qing(3);
  CHECK(f->value(DenseVector{1.0, std::sqrt(2.0), 123.0}) == doctest::Approx(0.0).scale(1e-12));
  CHECK(f->value(DenseVector{0, 0, 0}) == 5.0);
  const auto g = f->oracle(DenseVector{1.0, 1.0, 7.0}).gradient;
  CHECK(g[2] == 0.0);
}

TEST_CASE("rosenbrock values") {
  auto f = make_rosenbrock(5);
  DenseVector ones(5);
  ones.fill(1.0);
  CHECK(f->value(ones) == 0.0);
  auto f2 = make_rosenbrock(2);
  const auto r = f2->oracle(DenseVector{0, 0});
  CHECK(r.value == 1.0);
  CHECK(r.gradient[0] == -2.0);
  CHECK(r.gradient[1] == 0.0);
}

TEST_CASE("known optima hold at documented minimizers") {
  for (const auto& f : {make_dixon_price(30), make_powell(32), make_qing(30), make_rosenbrock(30)}) {
    CAPTURE(f->name());
    REQUIRE(f->known_optimum());
    CHECK(std::abs(f->value(*f->reference_minimizer()) - *f->known_optimum()) <= 1e-12);
  }
}

TEST_CASE("values never drop below known optima") {
  Rng rng(8);
  for (const auto& f : {make_dixon_price(7), make_powell(8), make_qing(7), make_rosenbrock(7)}) {
    for (int t = 0; t < 50; ++t) {
      DenseVector x(f->dim());
      for (std::size_t i = 0; i < x.dim(); ++i) x[i] = rng.uniform(-3.0, 3.0);
      CHECK(f->value(x) >= *f->known_optimum());
    }
  }
}

TEST_CASE("analytic gradients match finite differences") {
  Rng rng(99);
  std::vector<std::unique_ptr<Problem>> ps;
  ps.push_back(make_dixon_price(6));
  ps.push_back(make_powell(9));
  ps.push_back(make_qing(6));
  ps.push_back(make_rosenbrock(6));
  ps.push_back(make_cubic_sum(4));
  ps.push_back(make_random_quadratic(5, 1));
  for (const auto& p : ps) {
    CAPTURE(p->name());
    for (int t = 0; t < 20; ++t) {
      DenseVector x(p->dim());
      for (std::size_t i = 0; i < x.dim(); ++i) x[i] = rng.uniform(-2.0, 2.0);
      const auto g = p->oracle(x).gradient;
      const auto fd = fd_gradient(*p, x);
      double diff = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < x.dim(); ++i) {
        diff += (g[i] - fd[i]) * (g[i] - fd[i]);
        norm += g[i] * g[i];
      }
      CHECK(std::sqrt(diff) <= 1e-5 * std::sqrt(norm));
    }
  }
}

TEST_CASE("oracle checks dimension and finiteness") {
  auto f = make_rosenbrock(3);
  CHECK_THROWS_AS(f->oracle(DenseVector{1, 2}), InvalidInput);
  CHECK_THROWS_AS(f->oracle(DenseVector{1, NAN, 2}), OracleFailure);
  auto c = make_cubic_sum(1);
  CHECK_THROWS_AS(c->oracle(DenseVector{1e200}), OracleFailure);
}

TEST_CASE("evaluation is pure") {
  auto f = make_dixon_price(10);
  DenseVector x(10);
  for (std::size_t i = 0; i < 10; ++i) x[i] = 0.3 * static_cast<double>(i) - 1.0;
  const auto a = f->oracle(x);
  const auto b = f->oracle(x);
  CHECK(a.value == b.value);
  CHECK(a.gradient == b.gradient);
}

TEST_CASE("random quadratic spectrum") {
  auto q = make_random_quadratic(12, 4);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q->matrix()).eigenvalues();
  CHECK(ev.minCoeff() == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(ev.maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(*q->known_grad_lipschitz() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(q->value(*q->reference_minimizer()) == 0.0);
}

TEST_CASE("build_instance draws x* + N(0, I) reproducibly") {
  ProblemSpec ps;
  ps.name = "rosenbrock";
  ps.dim = 6;
  ps.seed = 42;
  const auto a = build_instance(ps);
  const auto b = build_instance(ps);
  CHECK(a.x_init == b.x_init);
  Rng rng(42);
  for (std::size_t i = 0; i < 6; ++i) CHECK(a.x_init[i] == 1.0 + rng.normal());
  ps.seed = 43;
  CHECK_FALSE(build_instance(ps).x_init == a.x_init);
  ps.name = "nope";
  CHECK_THROWS_AS(build_instance(ps), InvalidInput);
}
