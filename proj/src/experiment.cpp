#include "rhb/experiment.hpp"

#include <charconv>

#include "rhb/completion.hpp"
#include "rhb/errors.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/gradient_descent.hpp"
#include "rhb/heavy_ball.hpp"
#include "rhb/problems.hpp"
#include "rhb/rng.hpp"

#include <fstream>

namespace rhb {

bool is_known_problem(const std::string& name) {
  return name == "dixon-price" || name == "powell" || name == "qing" || name == "rosenbrock" ||
         name == "completion" || name == "quadratic-test";
}

RatingData load_completion_data(const ProblemSpec& spec) {
  RatingData data;
  if (spec.movielens) {
    data = load_movielens(*spec.movielens);
    if (spec.expect_ml100k) expect_ml100k_shape(data);
  } else if (spec.triples_csv) {
    std::ifstream in(*spec.triples_csv);
    if (!in) throw FileError("cannot open " + spec.triples_csv->string());
    data = read_triples_csv(in);
  } else {
    const SyntheticSpec syn = spec.synthetic.value_or(SyntheticSpec{});
    data = synthetic_completion(syn.p, syn.q, syn.r, syn.density, spec.seed).data;
  }
  return data;
}

namespace {

Instance completion_instance(const ProblemSpec& spec) {
  RatingData data = load_completion_data(spec);
  std::size_t rank = spec.rank;
  if (rank == 0 && !spec.movielens && !spec.triples_csv) rank = spec.synthetic.value_or(SyntheticSpec{}).r;
  if (rank == 0) throw InvalidInput("completion: --rank is required");
  Instance inst;
  inst.problem = make_matrix_completion(data.rows, data.cols, rank, std::move(data.triples));
  Rng rng(spec.seed + 1);
  inst.x_init = DenseVector(inst.problem->dim());
  for (std::size_t i = 0; i < inst.x_init.dim(); ++i) inst.x_init[i] = rng.normal();
  return inst;
}

}  // namespace

Instance build_instance(const ProblemSpec& spec) {
  if (spec.name == "completion") return completion_instance(spec);

  Instance inst;
  if (spec.name == "dixon-price") inst.problem = make_dixon_price(spec.dim);
  else if (spec.name == "powell") inst.problem = make_powell(spec.dim);
  else if (spec.name == "qing") inst.problem = make_qing(spec.dim);
  else if (spec.name == "rosenbrock") inst.problem = make_rosenbrock(spec.dim);
  else if (spec.name == "quadratic-test") inst.problem = make_half_squared_norm(spec.dim);
  else throw InvalidInput("unknown problem '" + spec.name + "'");

  if (spec.name == "quadratic-test") {
    inst.x_init = DenseVector(spec.dim);
    inst.x_init.fill(1.0);
    return inst;
  }
  inst.x_init = *inst.problem->reference_minimizer();
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < inst.x_init.dim(); ++i) inst.x_init[i] += rng.normal();
  return inst;
}

RunOutcome run_algorithm(Algorithm algo, const Instance& inst, const HBConfig& config) {
  RunOutcome out;
  if (algo == Algorithm::gd) {
    out.result = run_gradient_descent(*inst.problem, inst.x_init, config);
    return out;
  }
  if (inst.problem->dim() <= kMaxHessianDim) {
    IterateBoxTracker tracker;
    tracker.include(inst.x_init.span());
    out.result = run_heavy_ball(*inst.problem, inst.x_init, config, tracker.as_observer());
    out.iterate_box = tracker.box();
  } else {
    out.result = run_heavy_ball(*inst.problem, inst.x_init, config);
  }
  return out;
}

nlohmann::json summary_json(const RunResult& r) {
  return {{"best_value", r.best_value},
          {"returned_grad_norm", r.returned_grad_norm},
          {"oracle_calls", r.oracle_calls},
          {"total_iterations", r.total_iterations},
          {"terminated_by", std::string(to_string(r.terminated_by))}};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw InvalidInput("bad number '" + tok + "' in list '" + text + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace rhb
