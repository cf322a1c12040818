#include "dynachan/lqi.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynachan {

LqiAggregate::LqiAggregate(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ < 1) {
    throw std::invalid_argument("LqiAggregate: window capacity must be at least 1");
  }
  window_.reserve(capacity_);
}

void LqiAggregate::add(double sample) {
  if (sample < 0.0 || sample > 127.0) {
    throw std::invalid_argument("LqiAggregate: sample outside raw LQI range [0, 127]");
  }
  if (window_.size() == capacity_) {
    window_.erase(window_.begin());
  }
  window_.push_back(sample);
}

double LqiAggregate::mean() const {
  if (window_.empty()) return 0.0;
  double sum = 0.0;
  for (double s : window_) sum += s;
  return sum / static_cast<double>(window_.size());
}

double lqi_mean_for_prr(double prr, const LqiNoise& noise) {
  // Slope fixed by the two anchor points: 10 LQI per 0.3 PRR.
  const double slope = 10.0 / 0.3;
  const double mean = 75.0 + (prr - 0.5) * slope;
  return std::clamp(mean, noise.clamp_lo, noise.clamp_hi);
}

double sample_lqi_from_prr(double prr, Rng& rng, const LqiNoise& noise) {
  const double mean = lqi_mean_for_prr(prr, noise);
  const double sample = noise.sigma > 0.0 ? rng.normal(mean, noise.sigma) : mean;
  return std::clamp(sample, noise.clamp_lo, noise.clamp_hi);
}

}  // namespace dynachan
