#include "dynachan/topology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace dynachan {

Topology::Topology(const TopologyLayout& layout, const std::vector<ChannelId>& channels,
                   const RadioModel& radio)
    : layout_(layout) {
  if (layout_.relays_per_channel < 1) {
    throw std::invalid_argument("topology: need at least one relay per channel");
  }
  const int n = layout_.relays_per_channel;
  const double spacing =
      layout_.spacing_m > 0.0 ? layout_.spacing_m : layout_.hallway_m / static_cast<double>(n + 1);
  constexpr int kUnreached = std::numeric_limits<int>::max();

  RelayId next_id = 0;
  for (ChannelId ch : channels) {
    const RelayId base = next_id;
    for (int k = 0; k < n; ++k) {
      RelaySpec r;
      r.id = next_id++;
      r.channel = ch;
      r.pos_m = layout_.gateway_pos_m + spacing * static_cast<double>(k + 1);
      relays_.push_back(r);
    }

    auto pos = [&](int k) { return relays_[static_cast<std::size_t>(base + k)].pos_m; };
    auto usable = [&](double a, double b) {
      return radio.prr_of_distance(std::abs(a - b), ch) >= layout_.backbone_link_threshold;
    };

    // Min-hop tree toward the gateway over links that clear the backbone
    // PRR threshold. Ties on hop count go to the closest candidate parent,
    // then the lowest relay id.
    std::vector<int> hops(static_cast<std::size_t>(n), kUnreached);
    std::vector<RelayId> parent(static_cast<std::size_t>(n), kGateway);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int k = 0; k < n; ++k) {
        // (hops, distance-to-parent, parent-id-ordering-key)
        std::tuple<int, double, RelayId> best{kUnreached, 0.0, kGateway};
        if (usable(pos(k), layout_.gateway_pos_m)) {
          best = {1, std::abs(pos(k) - layout_.gateway_pos_m), kGateway};
        }
        for (int j = 0; j < n; ++j) {
          if (j == k || hops[static_cast<std::size_t>(j)] == kUnreached) continue;
          if (!usable(pos(k), pos(j))) continue;
          std::tuple<int, double, RelayId> cand{hops[static_cast<std::size_t>(j)] + 1,
                                                std::abs(pos(k) - pos(j)), base + j};
          if (cand < best) best = cand;
        }
        if (std::get<0>(best) < hops[static_cast<std::size_t>(k)]) {
          hops[static_cast<std::size_t>(k)] = std::get<0>(best);
          parent[static_cast<std::size_t>(k)] = std::get<2>(best);
          changed = true;
        }
      }
    }

    for (int k = 0; k < n; ++k) {
      if (hops[static_cast<std::size_t>(k)] == kUnreached) {
        throw std::invalid_argument(
            "topology: relay tree is disconnected; widen spacing or lower the link threshold");
      }
      relays_[static_cast<std::size_t>(base + k)].hops = hops[static_cast<std::size_t>(k)];
      relays_[static_cast<std::size_t>(base + k)].parent = parent[static_cast<std::size_t>(k)];
    }
  }
}

std::vector<RelayId> Topology::relays_on_channel(ChannelId channel) const {
  std::vector<RelayId> out;
  for (const auto& r : relays_) {
    if (r.channel == channel) out.push_back(r.id);
  }
  return out;
}

}  // namespace dynachan
