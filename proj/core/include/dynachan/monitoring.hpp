#ifndef DYNACHAN_MONITORING_HPP
#define DYNACHAN_MONITORING_HPP

#include <cstddef>
#include <utility>

#include "dynachan/delay.hpp"
#include "dynachan/lqi.hpp"
#include "dynachan/seeking.hpp"

namespace dynachan {

/// How the relative-delay guard treats the baseline comparison.
///
/// `Literal` keeps the published guard exactly as written: the node stays
/// only while the current delay has NOT dropped more than (1 - tau_d)
/// below its baseline, i.e. current >= baseline * tau_d. `Degradation`
/// flips it to the plausible intent: stay while the delay has not GROWN
/// past baseline / tau_d.
enum class DelayDriftMode { Literal, Degradation };

struct MonitorParams {
  double tau_d = 0.9;
  double tau_lqi = 0.9;
  double delay_requirement_ms = 500.0;
  std::size_t n_monitor = 10;
  DelayDriftMode drift_mode = DelayDriftMode::Literal;

  void validate() const;
};

enum class ReseekReason {
  LqiDegraded,             // windowed LQI fell below baseline * tau_lqi
  ClassDegraded,           // classification fell below the baseline class
  DelayRequirementExceeded,  // absolute end-to-end delay bound violated
  DelayDrift,              // relative-delay guard failed
};

const char* to_string(ReseekReason r);

struct Decision {
  bool stay = true;
  ReseekReason reason = ReseekReason::LqiDegraded;  // meaningful only when !stay
};

/// Per-association monitor state: the baseline captured when the link was
/// selected, the rolling LQI window, and the latest delay estimate.
struct MonitorState {
  double d_init_ms = 0.0;
  double lqi_init = 0.0;
  LinkClass class_init = LinkClass::Poor;
  LqiAggregate lqi_window;
  double current_d_ms = 0.0;
  MonitorParams params;

  explicit MonitorState(const MonitorParams& p) : lqi_window(p.n_monitor), params(p) {}
};

/// Captures the monitoring baseline from a fresh selection. The LQI window
/// starts seeded with the seek-phase sample.
MonitorState init_monitor(const Selection& sel, const MonitorParams& params);

/// One overheard update from the associated relay: `d_new_ms` is the delay
/// total piggybacked on the frame, `local` the source's own queuing-delay
/// estimate (the path set includes the source itself). Evaluates the four
/// guards in order -- LQI ratio, classification, absolute delay, relative
/// delay -- and reports the first failure as the reseek reason.
std::pair<MonitorState, Decision> on_overheard(MonitorState state, double d_new_ms,
                                               double lqi_sample, const DelayEwma& local);

}  // namespace dynachan

#endif  // DYNACHAN_MONITORING_HPP
