#include "dynachan/radio.hpp"

#include <cmath>

namespace dynachan {

double RadioModel::prr_of_distance(double distance_m, ChannelId channel) const {
  double d50 = p_.d50_m;
  if (auto it = p_.d50_per_channel.find(channel); it != p_.d50_per_channel.end()) {
    d50 = it->second;
  }
  return 1.0 / (1.0 + std::exp((distance_m - d50) / p_.w_m));
}

std::optional<double> RadioModel::attempt_transmission(double prr, Rng& rng,
                                                       bool receiver_has_room) const {
  if (!rng.bernoulli(prr)) return std::nullopt;  // data frame lost
  if (!receiver_has_room) return std::nullopt;   // buffered out: no ack comes back
  if (!rng.bernoulli(p_.ack_success_prob)) return std::nullopt;  // ack lost
  return sample_lqi_from_prr(prr, rng, p_.lqi_noise);
}

}  // namespace dynachan
