#ifndef DYNACHAN_DELAY_HPP
#define DYNACHAN_DELAY_HPP

#include <stdexcept>

namespace dynachan {

/// Smoothed local queuing delay of one node, in fractional milliseconds.
///
/// The first sample initializes the value; every later sample folds in as
///   value = alpha * value + (1 - alpha) * sample
/// The smoothing weight defaults to 0.5 and is fixed at construction.
struct DelayEwma {
  double value_ms = 0.0;
  double alpha = 0.5;
  bool initialized = false;

  /// Contribution to a path-delay sum: an estimator that has seen no
  /// traffic yet advertises zero rather than blocking propagation.
  double contribution_ms() const { return initialized ? value_ms : 0.0; }
};

inline DelayEwma ewma_update(DelayEwma state, double sample_ms) {
  if (sample_ms < 0.0) {
    throw std::invalid_argument("ewma_update: negative delay sample");
  }
  if (!state.initialized) {
    state.value_ms = sample_ms;
    state.initialized = true;
  } else {
    state.value_ms = state.alpha * state.value_ms + (1.0 - state.alpha) * sample_ms;
  }
  return state;
}

/// Aggregated end-to-end queuing delay estimate: the sum of local
/// estimates along a node's path to the gateway. A node only ever learns
/// its parent's total, so the path set never materializes.
struct PathDelay {
  double total_ms = 0.0;
};

/// One aggregation step: this node's local estimate plus the total its
/// parent advertised. Gateway-adjacent relays pass parent = {0}.
inline PathDelay path_delay_aggregate(const DelayEwma& local, PathDelay parent_advertised) {
  return PathDelay{local.contribution_ms() + parent_advertised.total_ms};
}

}  // namespace dynachan

#endif  // DYNACHAN_DELAY_HPP
