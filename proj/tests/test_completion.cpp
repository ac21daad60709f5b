#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rhb/completion.hpp"
#include "rhb/errors.hpp"
#include "rhb/experiment.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/rng.hpp"

using namespace rhb;

TEST_CASE("matrix completion hand values") {
  auto one = make_matrix_completion(1, 1, 1, {{0, 0, 1.0}});
  CHECK(one->value(DenseVector{1.0, 1.0}) == 0.0);
  CHECK(one->value(DenseVector{2.0, 1.0}) == 5.0);
  const auto g = one->oracle(DenseVector{2.0, 1.0}).gradient;
  // e = 1, M = 3: dU = e V + 2 U M = 1 + 12, dV = e U - 2 V M = 2 - 6.
  CHECK(g[0] == 13.0);
  CHECK(g[1] == -4.0);
}

TEST_CASE("matrix completion gradient matches finite differences") {
  const auto syn = synthetic_completion(4, 4, 2, 0.75, 3);
  auto f = make_matrix_completion(4, 4, 2, syn.data.triples);
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    DenseVector x(f->dim());
    for (std::size_t i = 0; i < x.dim(); ++i) x[i] = rng.uniform(-2.0, 2.0);
    const auto g = f->oracle(x).gradient;
    const auto fd = fd_gradient(*f, x);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      diff += (g[i] - fd[i]) * (g[i] - fd[i]);
      norm += g[i] * g[i];
    }
    CHECK(std::sqrt(diff) <= 1e-5 * std::sqrt(norm));
  }
}

TEST_CASE("matrix completion is invariant to the order of observations") {
  const auto syn = synthetic_completion(7, 5, 2, 0.5, 8);
  auto shuffled = syn.data.triples;
  std::mt19937_64 engine(4);
  std::shuffle(shuffled.begin(), shuffled.end(), engine);
  auto a = make_matrix_completion(7, 5, 2, syn.data.triples);
  auto b = make_matrix_completion(7, 5, 2, shuffled);
  DenseVector x(a->dim());
  for (std::size_t i = 0; i < x.dim(); ++i) x[i] = std::sin(static_cast<double>(i));
  const auto ra = a->oracle(x);
  const auto rb = b->oracle(x);
  CHECK(ra.value == rb.value);
  CHECK(ra.gradient == rb.gradient);
}

TEST_CASE("matrix completion validates input") {
  CHECK_THROWS_AS(make_matrix_completion(2, 2, 1, {{2, 0, 1.0}}), IndexOutOfRange);
  CHECK_THROWS_AS(make_matrix_completion(2, 2, 1, {{0, 2, 1.0}}), IndexOutOfRange);
  CHECK_THROWS_AS(make_matrix_completion(2, 2, 1, {}), InvalidInput);
  CHECK_THROWS_AS(make_matrix_completion(2, 2, 0, {{0, 0, 1.0}}), InvalidInput);
}

TEST_CASE("load_movielens parses u.data lines") {
  std::istringstream in("1\t2\t3\t881250949\n196\t242\t3\t881250949\r\n\n");
  const auto data = load_movielens(in);
  REQUIRE(data.triples.size() == 2);
  CHECK(data.triples[0] == RatingTriple{0, 1, 3.0});
  CHECK(data.triples[1] == RatingTriple{195, 241, 3.0});
  CHECK(data.rows == 196);
  CHECK(data.cols == 242);
  CHECK_THROWS_AS(expect_ml100k_shape(data), ParseError);
}

TEST_CASE("load_movielens errors") {
  std::istringstream empty("");
  CHECK_THROWS_AS(load_movielens(empty), EmptyFile);

  std::istringstream bad("1\t2\t3\t4\n1\t2\tx\t4\n");
  try {
    load_movielens(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }

  std::istringstream fields("1 2 3 4\n");
  CHECK_THROWS_AS(load_movielens(fields), ParseError);
  std::istringstream zero("0\t1\t3\t4\n");
  CHECK_THROWS_AS(load_movielens(zero), ParseError);
  CHECK_THROWS_AS(load_movielens(std::filesystem::path("/nonexistent/u.data")), FileError);
}

TEST_CASE("MovieLens-100K shape check") {
  RatingData data;
  data.rows = 943;
  data.cols = 1682;
  data.triples.assign(100000, RatingTriple{0, 0, 1.0});
  CHECK_NOTHROW(expect_ml100k_shape(data));
  data.triples.pop_back();
  CHECK_THROWS_AS(expect_ml100k_shape(data), ParseError);
}

TEST_CASE("synthetic completion") {
  const auto full = synthetic_completion(2, 2, 1, 1.0, 5);
  REQUIRE(full.data.triples.size() == 4);
  const auto& t = full.data.triples;
  // Rank one: s00 s11 = s01 s10.
  CHECK(t[0].value * t[3].value == doctest::Approx(t[1].value * t[2].value));

  const auto a = synthetic_completion(30, 20, 3, 0.2, 11);
  const auto b = synthetic_completion(30, 20, 3, 0.2, 11);
  CHECK(a.data.triples == b.data.triples);
  CHECK(a.planted == b.planted);
  CHECK(a.data.triples.size() == 120);
  CHECK_FALSE(synthetic_completion(30, 20, 3, 0.2, 12).data.triples == a.data.triples);

  for (std::uint64_t seed : {0u, 1u, 2u}) {
    const auto s = synthetic_completion(100, 100, 5, 0.1, seed);
    auto f = make_matrix_completion(100, 100, 5, s.data.triples);
    CHECK(f->value(s.planted) <= 1e-20);
  }
  CHECK_THROWS_AS(synthetic_completion(3, 3, 1, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(synthetic_completion(3, 3, 1, 1.5, 1), InvalidInput);
}

TEST_CASE("triples CSV round-trip") {
  const auto syn = synthetic_completion(9, 6, 2, 0.4, 21);
  std::stringstream buf;
  write_triples_csv(buf, syn.data.triples);
  const auto back = read_triples_csv(buf);
  CHECK(back.triples == syn.data.triples);

  std::istringstream bad_header("r,c,v\n0,0,1\n");
  CHECK_THROWS_AS(read_triples_csv(bad_header), ParseError);
  std::istringstream bad_row("row,col,value\n0,0\n");
  CHECK_THROWS_AS(read_triples_csv(bad_row), ParseError);
}

TEST_CASE("completion instances") {
  ProblemSpec ps;
  ps.name = "completion";
  ps.synthetic = SyntheticSpec{12, 10, 2, 0.5};
  ps.seed = 4;
  const auto inst = build_instance(ps);
  CHECK(inst.problem->dim() == (12 + 10) * 2);
  Rng rng(5);
  CHECK(inst.x_init[0] == rng.normal());
  ps.rank = 3;
  CHECK(build_instance(ps).problem->dim() == (12 + 10) * 3);
}
