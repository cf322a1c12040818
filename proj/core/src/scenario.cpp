#include "dynachan/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dynachan {

using json = nlohmann::json;

std::vector<double> ScenarioConfig::positions() const {
  if (!source_positions.empty()) return source_positions;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(source_count));
  for (int i = 0; i < source_count; ++i) {
    out.push_back(layout.hallway_m * (static_cast<double>(i) + 0.5) /
                  static_cast<double>(source_count));
  }
  return out;
}

void ScenarioConfig::rescale_duration(double new_duration_s) {
  if (new_duration_s <= 0.0) throw ScenarioError("duration_s", "must be positive");
  const double factor = new_duration_s / duration_s;
  duration_s = new_duration_s;
  if (!toggle.empty()) {
    toggle.off_at_s *= factor;
    toggle.on_at_s *= factor;
  }
  scaled = true;
}

void ScenarioConfig::validate() const {
  if (duration_s <= 0.0) throw ScenarioError("duration_s", "must be positive");
  if (channels.empty()) throw ScenarioError("channels", "at least one channel is required");
  std::set<ChannelId> seen;
  for (ChannelId c : channels) {
    if (!is_valid_channel(c)) {
      throw ScenarioError("channels",
                          "channel " + std::to_string(c) + " outside the valid range 11..26");
    }
    if (!seen.insert(c).second) {
      throw ScenarioError("channels", "duplicate channel " + std::to_string(c));
    }
  }
  if (source_count < 0) throw ScenarioError("sources.count", "must be non-negative");
  if (!source_positions.empty() &&
      source_positions.size() != static_cast<std::size_t>(source_count)) {
    throw ScenarioError("sources.positions", "length must match sources.count");
  }
  for (double p : positions()) {
    if (p < 0.0 || p > layout.hallway_m) {
      throw ScenarioError("sources.positions", "position outside the hallway");
    }
  }
  if (traffic_interval_ms <= 0.0) {
    throw ScenarioError("sources.traffic_interval_ms", "must be positive");
  }
  if (layout.relays_per_channel < 1) {
    throw ScenarioError("relays.per_channel", "must be at least 1");
  }
  if (layout.hallway_m <= 0.0) throw ScenarioError("relays.hallway_m", "must be positive");

  std::set<NodeId> walker_ids;
  for (const auto& g : walkers) {
    for (NodeId id : g.ids) {
      if (id < 0 || id >= source_count) {
        throw ScenarioError("sources.walkers.ids", "unknown source node " + std::to_string(id));
      }
      if (!walker_ids.insert(id).second) {
        throw ScenarioError("sources.walkers.ids",
                            "node " + std::to_string(id) + " assigned to two walker groups");
      }
    }
    if (g.speed_mps <= 0.0) throw ScenarioError("sources.walkers.speed_mps", "must be positive");
    if (g.direction != 1 && g.direction != -1) {
      throw ScenarioError("sources.walkers.direction", "must be +1 or -1");
    }
    if (g.start_m < 0.0 || g.start_m > layout.hallway_m) {
      throw ScenarioError("sources.walkers.start_m", "outside the hallway");
    }
  }

  if (!toggle.empty()) {
    std::set<NodeId> toggled;
    for (NodeId id : toggle.nodes) {
      if (id < 0 || id >= source_count) {
        throw ScenarioError("toggle.nodes", "unknown source node " + std::to_string(id));
      }
      if (!toggled.insert(id).second) {
        throw ScenarioError("toggle.nodes", "duplicate node " + std::to_string(id));
      }
    }
    if (toggle.off_at_s <= 0.0 || toggle.off_at_s >= duration_s) {
      throw ScenarioError("toggle.off_at_s", "must fall inside the run duration");
    }
    if (toggle.on_at_s <= toggle.off_at_s || toggle.on_at_s >= duration_s) {
      throw ScenarioError("toggle.on_at_s", "must fall between off_at_s and the run end");
    }
  }

  try {
    protocol.monitor.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("protocol", e.what());
  }
  if (protocol.ack_timeout_ms <= 0.0) throw ScenarioError("protocol.ack_timeout_ms", "must be positive");
  if (protocol.periodic_seek_s <= 0.0) throw ScenarioError("protocol.periodic_seek_s", "must be positive");
  if (protocol.seek_channel_overhead_ms < 0.0) {
    throw ScenarioError("protocol.seek_channel_overhead_ms", "must be non-negative");
  }
  for (ChannelId c : protocol.seek_channels) {
    if (!is_valid_channel(c)) {
      throw ScenarioError("protocol.seek_channels",
                          "channel " + std::to_string(c) + " outside the valid range 11..26");
    }
  }

  if (radio.queue_bound < 1) throw ScenarioError("radio.queue_bound", "must be at least 1");
  if (radio.max_retries < 0) throw ScenarioError("radio.max_retries", "must be non-negative");
  if (radio.packet_bytes < 1) throw ScenarioError("radio.packet_bytes", "must be positive");
  if (radio.service_overhead_ms < 0.0) {
    throw ScenarioError("radio.service_overhead_ms", "must be non-negative");
  }
  if (radio.switch_delay_lo_ms < 0.0 || radio.switch_delay_hi_ms < radio.switch_delay_lo_ms) {
    throw ScenarioError("radio.switch_delay_ms", "bounds must satisfy 0 <= lo <= hi");
  }
  if (radio.ack_success_prob < 0.0 || radio.ack_success_prob > 1.0) {
    throw ScenarioError("radio.ack_success_prob", "must be a probability");
  }
}

// ---------------------------------------------------------------------------
// JSON round trip

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& out, const std::string& field) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(field, "has the wrong type");
  }
}

}  // namespace

std::string to_json_string(const ScenarioConfig& cfg, int indent) {
  json j;
  j["name"] = cfg.name;
  j["duration_s"] = cfg.duration_s;
  j["channels"] = cfg.channels;
  j["seed"] = cfg.seed;
  if (cfg.scaled) j["scaled"] = true;

  j["relays"] = {
      {"per_channel", cfg.layout.relays_per_channel},
      {"hallway_m", cfg.layout.hallway_m},
      {"spacing_m", cfg.layout.spacing_m},
      {"gateway_pos_m", cfg.layout.gateway_pos_m},
      {"backbone_link_threshold", cfg.layout.backbone_link_threshold},
  };

  json sources;
  sources["count"] = cfg.source_count;
  sources["traffic_interval_ms"] = cfg.traffic_interval_ms;
  if (!cfg.source_positions.empty()) sources["positions"] = cfg.source_positions;
  if (!cfg.walkers.empty()) {
    json groups = json::array();
    for (const auto& g : cfg.walkers) {
      groups.push_back({{"ids", g.ids},
                        {"start_m", g.start_m},
                        {"direction", g.direction},
                        {"speed_mps", g.speed_mps}});
    }
    sources["walkers"] = groups;
  }
  j["sources"] = sources;

  if (!cfg.toggle.empty()) {
    j["toggle"] = {{"nodes", cfg.toggle.nodes},
                   {"off_at_s", cfg.toggle.off_at_s},
                   {"on_at_s", cfg.toggle.on_at_s}};
  }

  j["protocol"] = {
      {"tau_d", cfg.protocol.monitor.tau_d},
      {"tau_lqi", cfg.protocol.monitor.tau_lqi},
      {"delay_requirement_ms", cfg.protocol.monitor.delay_requirement_ms},
      {"n_monitor", cfg.protocol.monitor.n_monitor},
      {"delay_drift_mode",
       cfg.protocol.monitor.drift_mode == DelayDriftMode::Literal ? "literal" : "degradation"},
      {"ack_timeout_ms", cfg.protocol.ack_timeout_ms},
      {"periodic_seek_s", cfg.protocol.periodic_seek_s},
      {"seek_channels", cfg.protocol.seek_channels},
      {"seek_early_advance", cfg.protocol.seek_early_advance},
      {"seek_channel_overhead_ms", cfg.protocol.seek_channel_overhead_ms},
      {"reseek_backoff_ms", cfg.protocol.reseek_backoff_ms},
      {"join_jitter_s", cfg.protocol.join_jitter_s},
  };

  json radio;
  radio["bitrate_bps"] = cfg.radio.bitrate_bps;
  radio["service_overhead_ms"] = cfg.radio.service_overhead_ms;
  radio["switch_delay_ms"] = {cfg.radio.switch_delay_lo_ms, cfg.radio.switch_delay_hi_ms};
  radio["ack_success_prob"] = cfg.radio.ack_success_prob;
  radio["max_retries"] = cfg.radio.max_retries;
  radio["queue_bound"] = cfg.radio.queue_bound;
  radio["packet_bytes"] = cfg.radio.packet_bytes;
  radio["d50_m"] = cfg.radio.d50_m;
  if (!cfg.radio.d50_per_channel.empty()) {
    json overrides = json::object();
    for (const auto& [ch, d] : cfg.radio.d50_per_channel) overrides[std::to_string(ch)] = d;
    radio["d50_per_channel"] = overrides;
  }
  radio["w_m"] = cfg.radio.w_m;
  radio["lqi_sigma"] = cfg.radio.lqi_noise.sigma;
  radio["lqi_clamp"] = {cfg.radio.lqi_noise.clamp_lo, cfg.radio.lqi_noise.clamp_hi};
  j["radio"] = radio;

  return j.dump(indent);
}

ScenarioConfig scenario_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("<document>", "top level must be a JSON object");

  ScenarioConfig cfg;
  if (j.contains("name") && j.at("name").is_string()) {
    const std::string base = j.at("name").get<std::string>();
    if (is_builtin_scenario(base)) cfg = builtin_scenario(base);  // overrides apply on top
  }

  read_if(j, "name", cfg.name, "name");
  read_if(j, "duration_s", cfg.duration_s, "duration_s");
  read_if(j, "channels", cfg.channels, "channels");
  read_if(j, "seed", cfg.seed, "seed");
  read_if(j, "scaled", cfg.scaled, "scaled");

  if (j.contains("relays")) {
    const json& r = j.at("relays");
    read_if(r, "per_channel", cfg.layout.relays_per_channel, "relays.per_channel");
    read_if(r, "hallway_m", cfg.layout.hallway_m, "relays.hallway_m");
    read_if(r, "spacing_m", cfg.layout.spacing_m, "relays.spacing_m");
    read_if(r, "gateway_pos_m", cfg.layout.gateway_pos_m, "relays.gateway_pos_m");
    read_if(r, "backbone_link_threshold", cfg.layout.backbone_link_threshold,
            "relays.backbone_link_threshold");
  }

  if (j.contains("sources")) {
    const json& s = j.at("sources");
    read_if(s, "count", cfg.source_count, "sources.count");
    read_if(s, "traffic_interval_ms", cfg.traffic_interval_ms, "sources.traffic_interval_ms");
    read_if(s, "positions", cfg.source_positions, "sources.positions");
    if (s.contains("walkers")) {
      cfg.walkers.clear();
      if (!s.at("walkers").is_array()) throw ScenarioError("sources.walkers", "must be an array");
      for (const auto& g : s.at("walkers")) {
        WalkerGroup w;
        read_if(g, "ids", w.ids, "sources.walkers.ids");
        read_if(g, "start_m", w.start_m, "sources.walkers.start_m");
        read_if(g, "direction", w.direction, "sources.walkers.direction");
        read_if(g, "speed_mps", w.speed_mps, "sources.walkers.speed_mps");
        cfg.walkers.push_back(std::move(w));
      }
    }
  }

  if (j.contains("toggle")) {
    const json& t = j.at("toggle");
    read_if(t, "nodes", cfg.toggle.nodes, "toggle.nodes");
    read_if(t, "off_at_s", cfg.toggle.off_at_s, "toggle.off_at_s");
    read_if(t, "on_at_s", cfg.toggle.on_at_s, "toggle.on_at_s");
  }

  if (j.contains("protocol")) {
    const json& p = j.at("protocol");
    read_if(p, "tau_d", cfg.protocol.monitor.tau_d, "protocol.tau_d");
    read_if(p, "tau_lqi", cfg.protocol.monitor.tau_lqi, "protocol.tau_lqi");
    read_if(p, "delay_requirement_ms", cfg.protocol.monitor.delay_requirement_ms,
            "protocol.delay_requirement_ms");
    read_if(p, "n_monitor", cfg.protocol.monitor.n_monitor, "protocol.n_monitor");
    if (p.contains("delay_drift_mode")) {
      const std::string mode = p.at("delay_drift_mode").get<std::string>();
      if (mode == "literal") {
        cfg.protocol.monitor.drift_mode = DelayDriftMode::Literal;
      } else if (mode == "degradation") {
        cfg.protocol.monitor.drift_mode = DelayDriftMode::Degradation;
      } else {
        throw ScenarioError("protocol.delay_drift_mode", "must be 'literal' or 'degradation'");
      }
    }
    read_if(p, "ack_timeout_ms", cfg.protocol.ack_timeout_ms, "protocol.ack_timeout_ms");
    read_if(p, "periodic_seek_s", cfg.protocol.periodic_seek_s, "protocol.periodic_seek_s");
    read_if(p, "seek_channels", cfg.protocol.seek_channels, "protocol.seek_channels");
    read_if(p, "seek_early_advance", cfg.protocol.seek_early_advance,
            "protocol.seek_early_advance");
    read_if(p, "seek_channel_overhead_ms", cfg.protocol.seek_channel_overhead_ms,
            "protocol.seek_channel_overhead_ms");
    read_if(p, "reseek_backoff_ms", cfg.protocol.reseek_backoff_ms, "protocol.reseek_backoff_ms");
    read_if(p, "join_jitter_s", cfg.protocol.join_jitter_s, "protocol.join_jitter_s");
  }

  if (j.contains("radio")) {
    const json& r = j.at("radio");
    read_if(r, "bitrate_bps", cfg.radio.bitrate_bps, "radio.bitrate_bps");
    read_if(r, "service_overhead_ms", cfg.radio.service_overhead_ms, "radio.service_overhead_ms");
    if (r.contains("switch_delay_ms")) {
      std::vector<double> b;
      read_if(r, "switch_delay_ms", b, "radio.switch_delay_ms");
      if (b.size() != 2) throw ScenarioError("radio.switch_delay_ms", "must be [lo, hi]");
      cfg.radio.switch_delay_lo_ms = b[0];
      cfg.radio.switch_delay_hi_ms = b[1];
    }
    read_if(r, "ack_success_prob", cfg.radio.ack_success_prob, "radio.ack_success_prob");
    read_if(r, "max_retries", cfg.radio.max_retries, "radio.max_retries");
    read_if(r, "queue_bound", cfg.radio.queue_bound, "radio.queue_bound");
    read_if(r, "packet_bytes", cfg.radio.packet_bytes, "radio.packet_bytes");
    read_if(r, "d50_m", cfg.radio.d50_m, "radio.d50_m");
    if (r.contains("d50_per_channel")) {
      if (!r.at("d50_per_channel").is_object()) {
        throw ScenarioError("radio.d50_per_channel", "must be an object of channel -> meters");
      }
      for (const auto& [key, value] : r.at("d50_per_channel").items()) {
        cfg.radio.d50_per_channel[static_cast<ChannelId>(std::stoi(key))] = value.get<double>();
      }
    }
    read_if(r, "w_m", cfg.radio.w_m, "radio.w_m");
    read_if(r, "lqi_sigma", cfg.radio.lqi_noise.sigma, "radio.lqi_sigma");
    if (r.contains("lqi_clamp")) {
      std::vector<double> b;
      read_if(r, "lqi_clamp", b, "radio.lqi_clamp");
      if (b.size() != 2) throw ScenarioError("radio.lqi_clamp", "must be [lo, hi]");
      cfg.radio.lqi_noise.clamp_lo = b[0];
      cfg.radio.lqi_noise.clamp_hi = b[1];
    }
  }

  if (cfg.protocol.seek_channels.empty()) cfg.protocol.seek_channels = cfg.channels;
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Builtin catalog

namespace {

ScenarioConfig base_two_channel() {
  ScenarioConfig cfg;
  cfg.duration_s = 3600.0;
  cfg.channels = {25, 26};
  cfg.layout.relays_per_channel = 4;
  cfg.layout.hallway_m = 40.0;
  cfg.source_count = 45;
  cfg.protocol.seek_channels = cfg.channels;
  return cfg;
}

std::vector<NodeId> every_other_node(int count, int wanted) {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < count && static_cast<int>(out.size()) < wanted; id += 2) {
    out.push_back(id);
  }
  return out;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"steady-low",  "steady-high",        "dynamic-low",   "dynamic-high",
          "mobile-high", "four-channel-dynamic", "throughput-cal"};
}

bool is_builtin_scenario(const std::string& name) {
  const auto names = builtin_scenario_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

ScenarioConfig builtin_scenario(const std::string& name) {
  if (name == "steady-low") {
    ScenarioConfig cfg = base_two_channel();
    cfg.name = name;
    cfg.traffic_interval_ms = 1024.0;
    return cfg;
  }
  if (name == "steady-high") {
    ScenarioConfig cfg = base_two_channel();
    cfg.name = name;
    cfg.traffic_interval_ms = 128.0;
    return cfg;
  }
  if (name == "dynamic-low" || name == "dynamic-high") {
    ScenarioConfig cfg = base_two_channel();
    cfg.name = name;
    cfg.traffic_interval_ms = name == "dynamic-low" ? 1024.0 : 128.0;
    cfg.toggle.nodes = every_other_node(cfg.source_count, 23);
    cfg.toggle.off_at_s = 1800.0;
    cfg.toggle.on_at_s = 2700.0;
    return cfg;
  }
  if (name == "mobile-high") {
    ScenarioConfig cfg = base_two_channel();
    cfg.name = name;
    cfg.duration_s = 1200.0;
    cfg.traffic_interval_ms = 128.0;
    // Two carriers, one with two nodes and one with three, pacing the
    // hallway from opposite ends.
    cfg.walkers.push_back(WalkerGroup{{0, 1}, 0.0, 1, 1.2});
    cfg.walkers.push_back(WalkerGroup{{2, 3, 4}, cfg.layout.hallway_m, -1, 1.2});
    return cfg;
  }
  if (name == "four-channel-dynamic") {
    ScenarioConfig cfg = base_two_channel();
    cfg.name = name;
    cfg.channels = {23, 24, 25, 26};
    cfg.protocol.seek_channels = cfg.channels;
    cfg.traffic_interval_ms = 128.0;
    cfg.toggle.nodes = every_other_node(cfg.source_count, 23);
    cfg.toggle.off_at_s = 1800.0;
    cfg.toggle.on_at_s = 2700.0;
    return cfg;
  }
  if (name == "throughput-cal") {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.duration_s = 120.0;
    cfg.channels = {25};
    cfg.protocol.seek_channels = cfg.channels;
    cfg.layout.relays_per_channel = 1;
    cfg.layout.hallway_m = 8.0;  // relay lands at 4 m from the gateway
    cfg.source_count = 5;
    cfg.source_positions = {5.0, 5.5, 6.0, 6.5, 7.0};
    cfg.traffic_interval_ms = 5.0;  // faster than the service rate: senders saturate
    return cfg;
  }
  throw ScenarioError("scenario", "unknown builtin scenario '" + name + "'");
}

ScenarioConfig load_scenario(const std::string& name_or_path) {
  if (is_builtin_scenario(name_or_path)) {
    ScenarioConfig cfg = builtin_scenario(name_or_path);
    cfg.validate();
    return cfg;
  }
  if (!std::filesystem::exists(name_or_path)) {
    throw ScenarioError("scenario",
                        "'" + name_or_path + "' is neither a builtin scenario nor a file");
  }
  std::ifstream in(name_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  // A manifest embeds the scenario it ran; reuse it verbatim.
  try {
    const json j = json::parse(text);
    if (j.is_object() && j.contains("scenario") && j.contains("seed")) {
      ScenarioConfig cfg = scenario_from_json_string(j.at("scenario").dump());
      cfg.seed = j.at("seed").get<std::uint64_t>();
      return cfg;
    }
  } catch (const json::parse_error&) {
    throw ScenarioError("<document>", "'" + name_or_path + "' is not valid JSON");
  }
  return scenario_from_json_string(text);
}

}  // namespace dynachan
