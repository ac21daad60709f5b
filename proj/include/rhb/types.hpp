#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhb/vector.hpp"

namespace rhb {

struct HBConfig {
  double l_init = 1e-3;
  double alpha = 2.0;
  double beta = 0.1;
  double eps_grad = 1e-6;
  std::int64_t max_oracle_calls = 1'000'000;
  // Relative slack in the descent test: slack = rel * (|f_prev| + |f_cur|).
  double descent_slack_rel = 1e-12;

  // Throws InvalidInput when a field is out of range.
  void validate() const;

  // Baseline defaults: same as HB except beta = 0.9.
  static HBConfig gd_defaults();
};

enum class Event { none, restart_unsuccessful, restart_successful, terminated };

std::string_view to_string(Event e);
std::optional<Event> parse_event(std::string_view s);

struct IterationRecord {
  std::int64_t K = 0;
  std::int64_t k = 0;
  std::int64_t oracle_calls = 0;
  double f_x = 0.0;
  double grad_norm_x = 0.0;
  double grad_norm_xbar = 0.0;
  double f_xbar = 0.0;
  double v_norm = 0.0;
  double s_sum = 0.0;
  double h = 0.0;
  // Lipschitz estimate in force during this iteration (before any restart update).
  double ell = 0.0;
  double best_value = 0.0;
  Event event = Event::none;
};

using RunTrace = std::vector<IterationRecord>;

enum class TerminatedBy { grad_tol, budget };

std::string_view to_string(TerminatedBy t);

struct RunResult {
  DenseVector best_point{1};
  double best_value = 0.0;
  double returned_grad_norm = 0.0;
  std::int64_t total_iterations = 0;
  std::int64_t oracle_calls = 0;
  RunTrace trace;
  TerminatedBy terminated_by = TerminatedBy::budget;
};

}  // namespace rhb
