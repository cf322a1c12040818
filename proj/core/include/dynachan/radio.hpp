#ifndef DYNACHAN_RADIO_HPP
#define DYNACHAN_RADIO_HPP

#include <map>
#include <optional>

#include "dynachan/lqi.hpp"
#include "dynachan/rng.hpp"
#include "dynachan/types.hpp"

namespace dynachan {

/// Radio and per-hop service parameters. The service overhead on top of
/// raw airtime models the software stack between MAC and application; its
/// default makes a saturated single transmitter of 114-byte frames move
/// 38.9 Kbps.
struct RadioParams {
  double bitrate_bps = 250000.0;
  double service_overhead_ms = 19.8;
  double switch_delay_lo_ms = 0.7;
  double switch_delay_hi_ms = 1.4;
  double ack_timeout_ms = 22.0;
  double ack_success_prob = 0.98;
  int max_retries = 3;
  int queue_bound = 2;
  int packet_bytes = 114;
  double d50_m = 18.0;                      // distance of 50% reception
  std::map<ChannelId, double> d50_per_channel;  // optional per-channel overrides
  double w_m = 2.5;                         // logistic transition width
  LqiNoise lqi_noise;
};

class RadioModel {
 public:
  explicit RadioModel(const RadioParams& params) : p_(params) {}

  const RadioParams& params() const { return p_; }

  double airtime_ms(int bytes) const {
    return static_cast<double>(bytes) * 8.0 * 1000.0 / p_.bitrate_bps;
  }

  /// Time one transmission attempt occupies the sender: frame airtime plus
  /// the stack overhead.
  double service_time_ms() const { return airtime_ms(p_.packet_bytes) + p_.service_overhead_ms; }
  TimeUs service_time_us() const { return us_from_ms(service_time_ms()); }

  /// Reception probability of one frame over `distance_m` on `channel`:
  /// logistic in distance, 0.5 at d50, strictly decreasing.
  double prr_of_distance(double distance_m, ChannelId channel) const;

  TimeUs sample_switch_delay_us(Rng& rng) const {
    return us_from_ms(rng.uniform(p_.switch_delay_lo_ms, p_.switch_delay_hi_ms));
  }

  TimeUs ack_timeout_us() const { return us_from_ms(p_.ack_timeout_ms); }

  /// One acknowledged unicast attempt over a link with reception ratio
  /// `prr`. Returns the receiver's LQI reading on success; an empty result
  /// means the sender saw no acknowledgment: the frame was lost, the
  /// receiver had no buffer space left, or the ack itself was lost. The
  /// buffered-out case is what couples congestion into the sender's
  /// retransmissions and, through them, its delay estimate.
  std::optional<double> attempt_transmission(double prr, Rng& rng,
                                             bool receiver_has_room = true) const;

 private:
  RadioParams p_;
};

}  // namespace dynachan

#endif  // DYNACHAN_RADIO_HPP
