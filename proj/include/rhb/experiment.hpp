#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rhb/analysis.hpp"
#include "rhb/completion.hpp"
#include "rhb/problem.hpp"
#include "rhb/types.hpp"

namespace rhb {

struct SyntheticSpec {
  std::size_t p = 100;
  std::size_t q = 100;
  std::size_t r = 5;
  double density = 0.1;
};

struct ProblemSpec {
  std::string name;  // dixon-price | powell | qing | rosenbrock | completion | quadratic-test
  std::size_t dim = 100;
  std::uint64_t seed = 0;
  // completion only
  std::size_t rank = 0;  // 0: use the planted rank of synthetic data
  std::optional<std::filesystem::path> movielens;
  bool expect_ml100k = false;
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::filesystem::path> triples_csv;
};

struct Instance {
  std::unique_ptr<Problem> problem;
  DenseVector x_init{1};
};

// Benchmarks start at x* + δ with δ ~ N(0, I) drawn from Rng(seed).
// Completion data comes from Rng(seed) (synthetic) and the factors start
// N(0, 1) from Rng(seed + 1). quadratic-test starts at (1, ..., 1).
Instance build_instance(const ProblemSpec& spec);

bool is_known_problem(const std::string& name);

// Rating data selected by a completion spec: MovieLens file, triples CSV or
// synthetic data (in that order of precedence).
RatingData load_completion_data(const ProblemSpec& spec);

enum class Algorithm { hb, gd };

struct RunOutcome {
  RunResult result;
  std::optional<Box> iterate_box;  // HB runs with dim <= kMaxHessianDim
};

RunOutcome run_algorithm(Algorithm algo, const Instance& inst, const HBConfig& config);

nlohmann::json summary_json(const RunResult& result);

// Parses "a,b,c" into reals; throws InvalidInput on a bad token.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace rhb
