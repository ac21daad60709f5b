#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rhb/analysis.hpp"
#include "rhb/completion.hpp"
#include "rhb/errors.hpp"
#include "rhb/experiment.hpp"
#include "rhb/finite_diff.hpp"
#include "rhb/kernels.hpp"
#include "rhb/trace_io.hpp"

namespace rhb::cli {

namespace {

using json = nlohmann::json;

struct ProblemFlags {
  std::string problem;
  std::size_t dim = 100;
  std::uint64_t seed = 0;
  std::size_t rank = 0;
  std::string movielens;
  bool expect_ml100k = false;
  std::string synthetic;
  std::string triples;

  void add_to(CLI::App& app, bool required) {
    auto* opt = app.add_option("--problem", problem, "dixon-price | powell | qing | rosenbrock | completion");
    if (required) opt->required();
    app.add_option("--dim", dim, "Problem dimension (benchmarks)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for start point and synthetic data");
    app.add_option("--rank", rank, "Factor rank (completion)");
    app.add_option("--movielens", movielens, "MovieLens u.data file (completion)");
    app.add_flag("--expect-ml100k", expect_ml100k, "Require the MovieLens-100K shape");
    app.add_option("--synthetic", synthetic, "p,q,r,density synthetic completion data");
    app.add_option("--triples", triples, "row,col,value CSV (completion)");
  }

  ProblemSpec spec() const {
    if (!is_known_problem(problem)) throw InvalidInput("unknown problem '" + problem + "'");
    ProblemSpec s;
    s.name = problem;
    s.dim = dim;
    s.seed = seed;
    s.rank = rank;
    s.expect_ml100k = expect_ml100k;
    if (!movielens.empty()) s.movielens = movielens;
    if (!triples.empty()) s.triples_csv = triples;
    if (!synthetic.empty()) {
      const auto v = parse_real_list(synthetic);
      if (v.size() != 4 || v[0] < 1 || v[1] < 1 || v[2] < 1)
        throw InvalidInput("--synthetic expects p,q,r,density");
      s.synthetic = SyntheticSpec{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]),
                                  static_cast<std::size_t>(v[2]), v[3]};
    }
    return s;
  }
};

struct AlgoFlags {
  std::string algo = "hb";
  std::optional<double> l_init, alpha, beta;
  double eps = 1e-6;
  std::int64_t max_calls = 1'000'000;

  void add_to(CLI::App& app) {
    app.add_option("--algo", algo, "hb | gd")->check(CLI::IsMember({"hb", "gd"}));
    app.add_option("--l-init", l_init, "Initial Lipschitz estimate (default 1e-3)");
    app.add_option("--alpha", alpha, "Increase factor on a failed descent test (default 2)");
    app.add_option("--beta", beta, "Decrease factor (default 0.1 for hb, 0.9 for gd)");
    app.add_option("--eps", eps, "Gradient-norm tolerance");
    app.add_option("--max-oracle-calls", max_calls, "Oracle-call budget");
  }

  Algorithm algorithm() const { return algo == "gd" ? Algorithm::gd : Algorithm::hb; }

  HBConfig config() const {
    HBConfig c = algo == "gd" ? HBConfig::gd_defaults() : HBConfig{};
    if (l_init) c.l_init = *l_init;
    if (alpha) c.alpha = *alpha;
    if (beta) c.beta = *beta;
    c.eps_grad = eps;
    c.max_oracle_calls = max_calls;
    c.validate();
    return c;
  }
};

json config_json(const HBConfig& c) {
  return {{"l_init", c.l_init}, {"alpha", c.alpha}, {"beta", c.beta}, {"eps", c.eps_grad},
          {"max_oracle_calls", c.max_oracle_calls}};
}

json box_json(const Box& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

std::string default_summary_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".summary.json");
  return p.string();
}

int cmd_run(const ProblemFlags& pf, const AlgoFlags& af, const std::string& out, std::string summary,
            const std::string& export_triples) {
  const HBConfig config = af.config();
  const ProblemSpec spec = pf.spec();
  const Instance inst = build_instance(spec);
  if (!export_triples.empty()) {
    if (spec.name != "completion") throw InvalidInput("--export-triples needs --problem completion");
    std::ofstream tf(export_triples);
    if (!tf) throw FileError("cannot open " + export_triples + " for writing");
    const RatingData data = load_completion_data(spec);
    write_triples_csv(tf, data.triples);
  }

  const RunOutcome outcome = run_algorithm(af.algorithm(), inst, config);
  write_trace_csv(out, outcome.result.trace);

  json j = summary_json(outcome.result);
  j["algo"] = af.algo;
  j["problem"] = spec.name;
  j["dim"] = inst.problem->dim();
  j["seed"] = spec.seed;
  j["config"] = config_json(config);
  if (outcome.iterate_box) j["iterate_box"] = box_json(*outcome.iterate_box);
  if (summary.empty()) summary = default_summary_path(out);
  write_json(summary, j);
  return kOk;
}

int cmd_scaling(const ProblemFlags& pf, const AlgoFlags& af, const std::string& eps_list, const std::string& out,
                std::string summary) {
  const auto eps = parse_real_list(eps_list);
  if (eps.size() < 2) throw InvalidInput("--eps-list needs at least two values");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidInput("--eps-list values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw InvalidInput("--eps-list must be strictly decreasing");
  }
  const ProblemSpec spec = pf.spec();
  HBConfig base = af.config();
  const Instance inst = build_instance(spec);

  std::vector<RunResult> results(eps.size());
  const auto n = static_cast<long long>(eps.size());
  // Independent runs; each writes its own slot so row order follows eps.
#pragma omp parallel for schedule(dynamic) num_threads(kernels::threads())
  for (long long i = 0; i < n; ++i) {
    HBConfig c = base;
    c.eps_grad = eps[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = run_algorithm(af.algorithm(), inst, c).result;
  }

  std::ofstream csv(out);
  if (!csv) throw FileError("cannot open " + out + " for writing");
  csv << "eps,oracle_calls\n";
  std::vector<ScalingPoint> points;
  json rows = json::array();
  bool all_converged = true;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    csv << format_real(eps[i]) << ',' << results[i].oracle_calls << '\n';
    points.push_back({eps[i], results[i].oracle_calls});
    all_converged = all_converged && results[i].terminated_by == TerminatedBy::grad_tol;
    rows.push_back({{"eps", eps[i]},
                    {"oracle_calls", results[i].oracle_calls},
                    {"total_iterations", results[i].total_iterations},
                    {"terminated_by", std::string(to_string(results[i].terminated_by))}});
  }
  if (!csv) throw FileError("write failed: " + out);

  json j;
  j["algo"] = af.algo;
  j["problem"] = spec.name;
  j["dim"] = inst.problem->dim();
  j["seed"] = spec.seed;
  j["config"] = config_json(base);
  j["points"] = rows;
  j["all_converged"] = all_converged;
  j["exponent"] = fit_scaling_exponent(points);
  if (summary.empty()) summary = default_summary_path(out);
  write_json(summary, j);
  return kOk;
}

int cmd_verify(const ProblemFlags& pf, const std::string& trace_path, const std::string& summary_path,
               const std::string& nu_grid, std::int64_t samples, std::uint64_t holder_seed,
               const std::string& report_path) {
  RunTrace trace;
  try {
    trace = read_trace_csv(trace_path);
    validate_trace(trace);
  } catch (const MalformedTrace& e) {
    throw FileError(std::string("unreadable trace: ") + e.what());
  }

  std::optional<json> summary;
  if (!summary_path.empty()) {
    std::ifstream in(summary_path);
    if (!in) throw FileError("cannot open " + summary_path);
    try {
      summary = json::parse(in);
    } catch (const json::exception& e) {
      throw FileError(std::string("unreadable summary: ") + e.what());
    }
  }

  std::vector<VerificationReport> reports{verify_epoch_decrease(trace), verify_avg_grad_bound(trace)};
  json skipped = json::array();

  if (!pf.problem.empty()) {
    const Instance inst = build_instance(pf.spec());
    const Problem& problem = *inst.problem;

    if (summary && summary->contains("config") && problem.known_grad_lipschitz()) {
      const auto& c = (*summary)["config"];
      reports.push_back(verify_ell_bound(trace, c.at("l_init").get<double>(), c.at("alpha").get<double>(),
                                         *problem.known_grad_lipschitz()));
    }

    if (problem.dim() > kMaxHessianDim) {
      skipped.push_back("h_bound: dimension exceeds " + std::to_string(kMaxHessianDim));
    } else if (!summary || !summary->contains("iterate_box")) {
      skipped.push_back("h_bound: no iterate_box in summary");
    } else {
      Box box;
      try {
        box.lower = (*summary)["iterate_box"].at("lower").get<std::vector<double>>();
        box.upper = (*summary)["iterate_box"].at("upper").get<std::vector<double>>();
      } catch (const json::exception& e) {
        throw FileError(std::string("bad iterate_box: ") + e.what());
      }
      const Box region = box.inflated(0.1);
      const auto nus = nu_grid.empty() ? default_nu_grid() : parse_real_list(nu_grid);
      for (double nu : nus) {
        const HolderEstimate est = estimate_holder_hessian(problem, region, nu, samples, holder_seed);
        reports.push_back(verify_h_bound(trace, est));
      }
    }
  } else {
    skipped.push_back("h_bound: no --problem given");
  }

  bool ok = true;
  json checks = json::array();
  for (const auto& r : reports) {
    ok = ok && r.ok();
    checks.push_back(r.to_json());
  }
  const json report = {{"ok", ok}, {"records", trace.size()}, {"checks", checks}, {"skipped", skipped}};
  std::cout << report.dump(2) << '\n';
  if (!report_path.empty()) write_json(report_path, report);
  return ok ? kOk : kViolations;
}

int threads_from_env() {
  const char* env = std::getenv("RHB_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  return (end && *end == '\0' && v >= 1) ? static_cast<int>(v) : 1;
}

}  // namespace

int main(int argc, const char* const* argv) {
  kernels::set_threads(threads_from_env());

  CLI::App app{"Restarted heavy-ball optimizer: runs, scaling studies and trace verification"};
  app.require_subcommand(1);

  ProblemFlags run_pf, scaling_pf, verify_pf;
  AlgoFlags run_af, scaling_af;
  std::string run_out, run_summary, export_triples;
  auto* run = app.add_subcommand("run", "Run one optimizer and write its trace");
  run_pf.add_to(*run, true);
  run_af.add_to(*run);
  run->add_option("--out", run_out, "Trace CSV path")->required();
  run->add_option("--summary", run_summary, "Summary JSON path (default <out>.summary.json)");
  run->add_option("--export-triples", export_triples, "Also write the completion data as row,col,value CSV");

  std::string eps_list, scaling_out, scaling_summary;
  auto* scaling = app.add_subcommand("scaling", "Oracle calls versus eps, with a fitted exponent");
  scaling_pf.add_to(*scaling, true);
  scaling_af.add_to(*scaling);
  scaling_af.max_calls = 10'000'000;
  scaling->add_option("--eps-list", eps_list, "Comma-separated, strictly decreasing")->required();
  scaling->add_option("--out", scaling_out, "CSV path")->required();
  scaling->add_option("--summary", scaling_summary, "Summary JSON path (default <out>.summary.json)");

  std::string trace_path, summary_path, nu_grid, report_path;
  std::int64_t samples = 500;
  std::uint64_t holder_seed = 0;
  auto* verify = app.add_subcommand("verify", "Check a heavy-ball trace against its guarantees");
  verify_pf.add_to(*verify, false);
  verify->add_option("--trace", trace_path, "Trace CSV from `run`")->required();
  verify->add_option("--summary", summary_path, "Summary JSON from `run` (iterate box, config)");
  verify->add_option("--nu-grid", nu_grid, "Comma-separated Hölder exponents (default 0,0.25,0.5,0.75,1)");
  verify->add_option("--samples", samples, "Sampled pairs per Hölder estimate")->check(CLI::PositiveNumber);
  verify->add_option("--holder-seed", holder_seed, "Seed for Hölder sampling");
  verify->add_option("--report", report_path, "Also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadFlags;
  }

  try {
    if (*run) return cmd_run(run_pf, run_af, run_out, run_summary, export_triples);
    if (*scaling) return cmd_scaling(scaling_pf, scaling_af, eps_list, scaling_out, scaling_summary);
    return cmd_verify(verify_pf, trace_path, summary_path, nu_grid, samples, holder_seed, report_path);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadFlags;
  } catch (const OracleFailure& e) {
    std::cerr << "oracle failure: " << e.what() << '\n';
    return kOracleFailure;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kFileError;
  } catch (const std::runtime_error& e) {
    // FileError, ParseError, EmptyFile
    std::cerr << "file error: " << e.what() << '\n';
    return kFileError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadFlags;
  }
}

}  // namespace rhb::cli
