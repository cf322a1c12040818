#ifndef DYNACHAN_TOPOLOGY_HPP
#define DYNACHAN_TOPOLOGY_HPP

#include <vector>

#include "dynachan/radio.hpp"
#include "dynachan/types.hpp"

namespace dynachan {

struct RelaySpec {
  RelayId id = 0;
  ChannelId channel = 0;
  double pos_m = 0.0;
  RelayId parent = kGateway;
  int hops = 1;  // backbone hops to the gateway
};

struct TopologyLayout {
  int relays_per_channel = 4;
  double hallway_m = 40.0;
  double spacing_m = 0.0;        // 0 = even spacing hallway/(n+1)
  double gateway_pos_m = 0.0;
  double backbone_link_threshold = 0.9;  // min PRR for a usable backbone link
};

/// Static backbone: one min-hop tree per channel, rooted at the gateway.
/// Relay positions repeat at the same spots on every channel, mirroring a
/// deployment that stacks one device per channel at each site.
class Topology {
 public:
  Topology(const TopologyLayout& layout, const std::vector<ChannelId>& channels,
           const RadioModel& radio);

  const std::vector<RelaySpec>& relays() const { return relays_; }
  const RelaySpec& relay(RelayId id) const { return relays_[static_cast<std::size_t>(id)]; }
  double gateway_pos_m() const { return layout_.gateway_pos_m; }
  double hallway_m() const { return layout_.hallway_m; }

  /// Relay ids living on `channel`, ascending.
  std::vector<RelayId> relays_on_channel(ChannelId channel) const;

 private:
  TopologyLayout layout_;
  std::vector<RelaySpec> relays_;
};

}  // namespace dynachan

#endif  // DYNACHAN_TOPOLOGY_HPP
