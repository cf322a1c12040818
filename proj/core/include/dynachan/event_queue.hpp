#ifndef DYNACHAN_EVENT_QUEUE_HPP
#define DYNACHAN_EVENT_QUEUE_HPP

#include <cassert>
#include <cstdint>
#include <queue>
#include <variant>
#include <vector>

#include "dynachan/types.hpp"

namespace dynachan {

enum class EventKind {
  PacketArrival,
  ServiceComplete,
  AckTimeout,
  SeekChannelDeadline,
  PeriodicSeekTimer,
  TrafficGen,
  MobilityStep,
  NodeToggle,
  MetricsTick,
};

const char* to_string(EventKind k);

/// A data frame travelling through the network. The packet keeps its
/// origin metadata for latency accounting; enqueued_at is rewritten at
/// every queue it enters.
struct Packet {
  std::uint64_t id = 0;
  NodeId origin = 0;
  TimeUs generated_at = 0;
  TimeUs enqueued_at = 0;
  int source_hop = 0;       // backbone hops of the first relay + 1, set at first transmission
  ChannelId channel = 0;    // channel the packet was injected on
};

/// A probe reply in flight toward a seeking source. The advertised delay
/// and the LQI reading are resolved when the reply is created.
struct ProbeReply {
  RelayId relay = 0;
  double advertised_delay_ms = 0.0;
  double lqi = 0.0;
};

struct SimEvent {
  TimeUs time = 0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::MetricsTick;
  bool relay_target = false;
  std::int32_t node = -1;
  std::uint64_t epoch = 0;  // staleness guard for cancellable per-node events
  std::int64_t tag = 0;     // kind-specific: seek cursor, toggle direction, timer flavor
  std::variant<std::monostate, Packet, ProbeReply> payload;
};

/// Min-heap over (time, seq). seq is assigned at push time, so events
/// scheduled for the same instant dispatch in scheduling order and the
/// whole run is reproducible.
class EventQueue {
 public:
  void push(SimEvent e) {
    e.seq = next_seq_++;
    heap_.push(std::move(e));
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const SimEvent& top() const { return heap_.top(); }

  SimEvent pop() {
    SimEvent e = heap_.top();
    heap_.pop();
    if (popped_any_ && (e.time < last_time_ || (e.time == last_time_ && e.seq <= last_seq_))) {
      ++out_of_order_;
      assert(false && "event queue dispatched out of (time, seq) order");
    }
    popped_any_ = true;
    last_time_ = e.time;
    last_seq_ = e.seq;
    return e;
  }

  std::uint64_t out_of_order_count() const { return out_of_order_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t out_of_order_ = 0;
  TimeUs last_time_ = 0;
  std::uint64_t last_seq_ = 0;
  bool popped_any_ = false;
};

}  // namespace dynachan

#endif  // DYNACHAN_EVENT_QUEUE_HPP
