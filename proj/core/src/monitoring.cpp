#include "dynachan/monitoring.hpp"

#include <stdexcept>

namespace dynachan {

void MonitorParams::validate() const {
  if (!(tau_d > 0.0 && tau_d <= 1.0)) throw std::invalid_argument("tau_d must be in (0, 1]");
  if (!(tau_lqi > 0.0 && tau_lqi <= 1.0)) throw std::invalid_argument("tau_lqi must be in (0, 1]");
  if (!(delay_requirement_ms > 0.0)) {
    throw std::invalid_argument("delay_requirement_ms must be positive");
  }
  if (n_monitor < 1) throw std::invalid_argument("n_monitor must be at least 1");
}

const char* to_string(ReseekReason r) {
  switch (r) {
    case ReseekReason::LqiDegraded: return "lqi_degraded";
    case ReseekReason::ClassDegraded: return "class_degraded";
    case ReseekReason::DelayRequirementExceeded: return "delay_requirement_exceeded";
    default: return "delay_drift";
  }
}

MonitorState init_monitor(const Selection& sel, const MonitorParams& params) {
  params.validate();
  MonitorState state(params);
  state.d_init_ms = sel.baseline_delay.total_ms;
  state.lqi_init = sel.baseline_lqi;
  state.class_init = sel.baseline_class;
  state.lqi_window.add(sel.baseline_lqi);
  state.current_d_ms = sel.baseline_delay.total_ms;
  return state;
}

std::pair<MonitorState, Decision> on_overheard(MonitorState state, double d_new_ms,
                                               double lqi_sample, const DelayEwma& local) {
  state.lqi_window.add(lqi_sample);
  state.current_d_ms = path_delay_aggregate(local, PathDelay{d_new_ms}).total_ms;

  const double mean_lqi = state.lqi_window.mean();
  const MonitorParams& p = state.params;

  Decision decision;
  if (!(mean_lqi >= state.lqi_init * p.tau_lqi)) {
    decision = {false, ReseekReason::LqiDegraded};
  } else if (!(classify_link(mean_lqi) >= state.class_init)) {
    decision = {false, ReseekReason::ClassDegraded};
  } else if (!(state.current_d_ms < p.delay_requirement_ms)) {
    decision = {false, ReseekReason::DelayRequirementExceeded};
  } else {
    const bool drift_ok = p.drift_mode == DelayDriftMode::Literal
                              ? state.current_d_ms >= state.d_init_ms * p.tau_d
                              : state.current_d_ms <= state.d_init_ms / p.tau_d;
    if (!drift_ok) decision = {false, ReseekReason::DelayDrift};
  }
  return {std::move(state), decision};
}

}  // namespace dynachan
