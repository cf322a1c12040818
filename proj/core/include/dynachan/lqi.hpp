#ifndef DYNACHAN_LQI_HPP
#define DYNACHAN_LQI_HPP

#include <cstddef>
#include <vector>

#include "dynachan/rng.hpp"

namespace dynachan {

/// Link quality classes, totally ordered Good > Fair > Poor.
enum class LinkClass { Poor = 0, Fair = 1, Good = 2 };

inline const char* to_string(LinkClass c) {
  switch (c) {
    case LinkClass::Good: return "good";
    case LinkClass::Fair: return "fair";
    default: return "poor";
  }
}

constexpr double kGoodLqiThreshold = 85.0;
constexpr double kFairLqiThreshold = 75.0;

/// Mean-LQI classification. Boundary values resolve upward: exactly 85 is
/// good, exactly 75 is fair.
inline LinkClass classify_link(double mean_lqi) {
  if (mean_lqi >= kGoodLqiThreshold) return LinkClass::Good;
  if (mean_lqi >= kFairLqiThreshold) return LinkClass::Fair;
  return LinkClass::Poor;
}

/// Windowed mean of the last n raw LQI samples.
class LqiAggregate {
 public:
  explicit LqiAggregate(std::size_t capacity);

  /// Appends a sample, evicting the oldest when the window is full.
  /// Samples outside the raw 802.15.4 range [0, 127] are rejected.
  void add(double sample);

  double mean() const;
  std::size_t size() const { return window_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::vector<double>& samples() const { return window_; }

 private:
  std::size_t capacity_;
  std::vector<double> window_;  // oldest first
};

/// Noise/clamp parameters of the simulated LQI reporting model.
struct LqiNoise {
  double sigma = 3.0;
  double clamp_lo = 40.0;
  double clamp_hi = 110.0;
};

/// Expected LQI for a given packet reception ratio: the line through
/// (PRR 0.5, LQI 75) and (PRR 0.8, LQI 85), extended with the same slope
/// and clamped to the observable range. Strictly increasing on [0, 1]
/// before clamping, so the classification regions line up with the PRR
/// bands they were derived from.
double lqi_mean_for_prr(double prr, const LqiNoise& noise = {});

/// Draws one simulated per-packet LQI reading for a link with the given
/// reception ratio: expected value plus Gaussian noise, clamped.
double sample_lqi_from_prr(double prr, Rng& rng, const LqiNoise& noise = {});

}  // namespace dynachan

#endif  // DYNACHAN_LQI_HPP
