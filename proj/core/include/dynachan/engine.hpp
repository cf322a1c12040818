#ifndef DYNACHAN_ENGINE_HPP
#define DYNACHAN_ENGINE_HPP

#include <deque>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dynachan/event_queue.hpp"
#include "dynachan/metrics.hpp"
#include "dynachan/monitoring.hpp"
#include "dynachan/radio.hpp"
#include "dynachan/rng.hpp"
#include "dynachan/scenario.hpp"
#include "dynachan/seeking.hpp"
#include "dynachan/topology.hpp"

namespace dynachan {

struct RunCounters {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t residual = 0;  // still queued when the run ended
  std::uint64_t out_of_order_dispatches = 0;
  std::uint64_t stay_decisions = 0;
  std::uint64_t reseek_decisions[4] = {0, 0, 0, 0};  // by ReseekReason
  std::uint64_t seeks_started = 0;
  std::uint64_t seeks_selected = 0;
  std::uint64_t seeks_empty = 0;
  std::uint64_t late_replies = 0;
  std::uint64_t events_dispatched = 0;
};

struct RunResult {
  MetricsStore metrics;
  SummaryTables summary;
  RunCounters counters;
  std::uint64_t trace_hash = 0;
  double duration_s = 0.0;

  std::uint64_t total_drops() const { return metrics.total_drops(); }
  bool conservation_holds() const {
    return counters.generated == counters.delivered + total_drops() + counters.residual;
  }
};

/// Deterministic single-threaded event engine. One instance owns all of a
/// run's state; instances are independent, so scenario sweeps can run one
/// engine per thread.
class Engine {
 public:
  /// Observation points for oracle tests. Called synchronously from the
  /// event loop; handlers must not mutate the engine.
  struct Hooks {
    /// A relay put its current end-to-end delay estimate on the air
    /// (data frame or probe reply).
    std::function<void(const Engine&, RelayId, double advertised_ms)> on_advertisement;
    /// A source evaluated the monitoring guards; current_d_ms is the
    /// delay estimate the decision used.
    std::function<void(const Engine&, NodeId, double current_d_ms)> on_source_decision;
  };

  Engine(ScenarioConfig cfg, std::uint64_t seed);

  void set_hooks(Hooks hooks) { hooks_ = std::move(hooks); }
  /// Line-oriented event trace:  <time_us> <seq> <kind> <node> <detail>
  void set_trace(std::ostream* sink) { trace_ = sink; }

  RunResult run();

  // --- read-only state, for oracles -------------------------------------
  const ScenarioConfig& scenario() const { return cfg_; }
  const Topology& topology() const { return *topology_; }
  const RadioModel& radio() const { return radio_; }
  TimeUs now() const { return now_; }
  int source_count() const { return static_cast<int>(sources_.size()); }

  double relay_local_delay_ms(RelayId r) const;
  RelayId relay_parent(RelayId r) const;
  double source_local_delay_ms(NodeId s) const;
  std::optional<RelayId> source_relay(NodeId s) const;
  std::optional<ChannelId> source_channel(NodeId s) const;
  bool source_associated(NodeId s) const;

  /// The delay total a relay advertises right now: its own estimate plus
  /// every ancestor's, walked live along the parent chain.
  double advertised_delay_ms(RelayId r) const;

 private:
  enum class SourceMode { Idle, Seeking, Associated };

  struct RelayNode {
    RelaySpec spec;
    std::deque<Packet> queue;
    DelayEwma ewma;
    bool busy = false;
    int attempts = 0;
  };

  struct SourceNode {
    NodeId id = 0;
    double pos_m = 0.0;
    bool walker = false;
    double speed_mps = 0.0;
    int direction = 1;
    bool active = true;
    SourceMode mode = SourceMode::Idle;
    std::deque<Packet> queue;           // application backlog
    std::optional<Packet> tx_buffer;    // single-depth transmit stage
    TimeUs buffer_entered_at = 0;
    DelayEwma ewma;
    bool busy = false;
    int attempts = 0;
    std::optional<Selection> assoc;
    std::optional<MonitorState> monitor;
    std::optional<SeekState> seek;
    std::optional<ChannelId> last_channel;
    TimeUs seek_started_at = 0;
    std::uint64_t life_epoch = 0;     // guards traffic + periodic timers
    std::uint64_t service_epoch = 0;  // guards service + seek events
  };

  // event handlers
  void dispatch(const SimEvent& e);
  void handle_traffic_gen(const SimEvent& e);
  void handle_service_complete(const SimEvent& e);
  void handle_packet_arrival(const SimEvent& e);
  void handle_ack_timeout(const SimEvent& e);
  void handle_seek_channel_deadline(const SimEvent& e);
  void handle_periodic_seek(const SimEvent& e);
  void handle_mobility_step(const SimEvent& e);
  void handle_node_toggle(const SimEvent& e);
  void handle_metrics_tick(const SimEvent& e);

  // helpers
  void schedule(TimeUs at, EventKind kind, bool relay_target, std::int32_t node,
                std::uint64_t epoch, std::int64_t tag = 0,
                std::variant<std::monostate, Packet, ProbeReply> payload = std::monostate{});
  void load_tx_buffer(SourceNode& s);
  void start_seek(SourceNode& s);
  void emit_probe(SourceNode& s, TimeUs emit_time);
  void close_seek_channel(SourceNode& s);
  void advance_seek(SourceNode& s);
  void finish_seek(SourceNode& s);
  void maybe_start_source_service(SourceNode& s);
  void maybe_start_relay_service(RelayNode& r);
  void relay_service_complete(RelayNode& r);
  void source_service_complete(SourceNode& s);
  void overhear_from_relay(RelayNode& r, double advertised_ms);
  double link_prr(const SourceNode& s, const RelayNode& r) const;
  double relay_uplink_prr(const RelayNode& r) const;
  void trace_event(const SimEvent& e);

  ScenarioConfig cfg_;
  RadioModel radio_;
  std::optional<Topology> topology_;
  Rng rng_;
  EventQueue queue_;
  TimeUs now_ = 0;
  TimeUs duration_us_ = 0;
  TimeUs service_us_ = 0;
  TimeUs ack_timeout_us_ = 0;
  TimeUs overhead_us_ = 0;

  std::vector<RelayNode> relays_;
  std::vector<SourceNode> sources_;
  std::uint64_t next_packet_id_ = 0;

  MetricsStore metrics_;
  RunCounters counters_;
  Hooks hooks_;
  std::ostream* trace_ = nullptr;
  std::uint64_t trace_hash_ = 14695981039346656037ull;
};

}  // namespace dynachan

#endif  // DYNACHAN_ENGINE_HPP
