#ifndef DYNACHAN_SCENARIO_HPP
#define DYNACHAN_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynachan/monitoring.hpp"
#include "dynachan/radio.hpp"
#include "dynachan/topology.hpp"
#include "dynachan/types.hpp"

namespace dynachan {

/// A scenario failed to parse or violates an invariant. `field` names the
/// offending entry.
struct ScenarioError : std::runtime_error {
  std::string field;
  ScenarioError(std::string field_name, const std::string& message)
      : std::runtime_error(field_name + ": " + message), field(std::move(field_name)) {}
};

struct WalkerGroup {
  std::vector<NodeId> ids;
  double start_m = 0.0;
  int direction = 1;        // +1 toward the far end, -1 toward the gateway
  double speed_mps = 1.2;
};

struct ToggleSchedule {
  std::vector<NodeId> nodes;
  double off_at_s = 0.0;
  double on_at_s = 0.0;
  bool empty() const { return nodes.empty(); }
};

struct ProtocolParams {
  MonitorParams monitor;
  double ack_timeout_ms = 22.0;
  double periodic_seek_s = 30.0;
  std::vector<ChannelId> seek_channels;  // defaults to the scenario channel list
  bool seek_early_advance = false;
  double seek_channel_overhead_ms = 9.0;  // reply processing, charged per answered channel
  double reseek_backoff_ms = 1000.0;      // retry delay after an empty candidate table
  double join_jitter_s = 2.0;             // nodes come up within this window
};

struct ScenarioConfig {
  std::string name = "custom";
  double duration_s = 60.0;
  std::vector<ChannelId> channels{25, 26};
  TopologyLayout layout;
  int source_count = 0;
  std::vector<double> source_positions;  // empty = even spread over the hallway
  double traffic_interval_ms = 1024.0;
  std::vector<WalkerGroup> walkers;
  ToggleSchedule toggle;
  ProtocolParams protocol;
  RadioParams radio;
  std::uint64_t seed = 1;

  // Set when a builtin was rescaled via --duration-s.
  bool scaled = false;

  /// Effective position list (auto-spread applied).
  std::vector<double> positions() const;

  /// Scales duration and toggle instants by new_duration / duration.
  void rescale_duration(double new_duration_s);

  void validate() const;
};

std::vector<std::string> builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
ScenarioConfig builtin_scenario(const std::string& name);

/// Loads a scenario: a builtin name, a scenario JSON file, or a run
/// manifest (whose embedded scenario and seed are reused verbatim).
ScenarioConfig load_scenario(const std::string& name_or_path);

std::string to_json_string(const ScenarioConfig& cfg, int indent = 2);
ScenarioConfig scenario_from_json_string(const std::string& text);

}  // namespace dynachan

#endif  // DYNACHAN_SCENARIO_HPP
