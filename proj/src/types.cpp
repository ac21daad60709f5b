#include "rhb/types.hpp"

#include <cmath>

#include "rhb/errors.hpp"

namespace rhb {

void HBConfig::validate() const {
  if (!(l_init > 0.0) || !std::isfinite(l_init)) throw InvalidInput("l_init must be positive");
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw InvalidInput("alpha must exceed 1");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidInput("beta must lie in (0, 1]");
  if (!(eps_grad >= 0.0)) throw InvalidInput("eps must be nonnegative");
  if (max_oracle_calls < 1) throw InvalidInput("max_oracle_calls must be positive");
  if (!(descent_slack_rel >= 0.0)) throw InvalidInput("descent slack must be nonnegative");
}

HBConfig HBConfig::gd_defaults() {
  HBConfig c;
  c.beta = 0.9;
  return c;
}

std::string_view to_string(Event e) {
  switch (e) {
    case Event::none: return "none";
    case Event::restart_unsuccessful: return "restart_unsuccessful";
    case Event::restart_successful: return "restart_successful";
    case Event::terminated: return "terminated";
  }
  return "none";
}

std::optional<Event> parse_event(std::string_view s) {
  for (Event e : {Event::none, Event::restart_unsuccessful, Event::restart_successful, Event::terminated})
    if (to_string(e) == s) return e;
  return std::nullopt;
}

std::string_view to_string(TerminatedBy t) {
  return t == TerminatedBy::grad_tol ? "grad_tol" : "budget";
}

}  // namespace rhb
