#include "dynachan/engine.hpp"

#include <algorithm>
#include <cmath>

namespace dynachan {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::PacketArrival: return "packet_arrival";
    case EventKind::ServiceComplete: return "service_complete";
    case EventKind::AckTimeout: return "ack_timeout";
    case EventKind::SeekChannelDeadline: return "seek_channel_deadline";
    case EventKind::PeriodicSeekTimer: return "periodic_seek_timer";
    case EventKind::TrafficGen: return "traffic_gen";
    case EventKind::MobilityStep: return "mobility_step";
    case EventKind::NodeToggle: return "node_toggle";
    default: return "metrics_tick";
  }
}

namespace {
constexpr TimeUs kMobilityStepUs = 100000;  // 100 ms
constexpr double kReplyJitterLoMs = 1.0;
constexpr double kReplyJitterHiMs = 6.0;

std::uint64_t fnv_fold(std::uint64_t h, std::uint64_t x) {
  h ^= x;
  return h * 1099511628211ull;
}
}  // namespace

Engine::Engine(ScenarioConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)), radio_(cfg_.radio), rng_(seed) {
  cfg_.validate();
  if (cfg_.protocol.seek_channels.empty()) cfg_.protocol.seek_channels = cfg_.channels;
  topology_.emplace(cfg_.layout, cfg_.channels, radio_);

  duration_us_ = us_from_s(cfg_.duration_s);
  service_us_ = radio_.service_time_us();
  ack_timeout_us_ = us_from_ms(cfg_.protocol.ack_timeout_ms);
  overhead_us_ = us_from_ms(cfg_.protocol.seek_channel_overhead_ms);

  relays_.reserve(topology_->relays().size());
  for (const auto& spec : topology_->relays()) {
    RelayNode r;
    r.spec = spec;
    relays_.push_back(std::move(r));
  }

  const auto positions = cfg_.positions();
  sources_.resize(static_cast<std::size_t>(cfg_.source_count));
  for (int i = 0; i < cfg_.source_count; ++i) {
    auto& s = sources_[static_cast<std::size_t>(i)];
    s.id = i;
    s.pos_m = positions[static_cast<std::size_t>(i)];
    metrics_.ensure_node(i);
  }
  for (const auto& group : cfg_.walkers) {
    for (NodeId id : group.ids) {
      auto& s = sources_[static_cast<std::size_t>(id)];
      s.walker = true;
      s.speed_mps = group.speed_mps;
      s.direction = group.direction;
      s.pos_m = group.start_m;
    }
  }
}

void Engine::schedule(TimeUs at, EventKind kind, bool relay_target, std::int32_t node,
                      std::uint64_t epoch, std::int64_t tag,
                      std::variant<std::monostate, Packet, ProbeReply> payload) {
  SimEvent e;
  e.time = at;
  e.kind = kind;
  e.relay_target = relay_target;
  e.node = node;
  e.epoch = epoch;
  e.tag = tag;
  e.payload = std::move(payload);
  queue_.push(std::move(e));
}

RunResult Engine::run() {
  const TimeUs interval_us = us_from_ms(cfg_.traffic_interval_ms);
  for (auto& s : sources_) {
    const TimeUs join_at = us_from_s(rng_.uniform(0.0, cfg_.protocol.join_jitter_s));
    const TimeUs first_gen = static_cast<TimeUs>(rng_.uniform01() * static_cast<double>(interval_us));
    schedule(join_at, EventKind::PeriodicSeekTimer, false, s.id, s.life_epoch, /*recurring=*/1);
    schedule(first_gen, EventKind::TrafficGen, false, s.id, s.life_epoch);
  }
  if (!cfg_.walkers.empty()) {
    schedule(kMobilityStepUs, EventKind::MobilityStep, false, -1, 0);
  }
  if (duration_us_ >= us_from_s(60.0)) {
    schedule(us_from_s(60.0), EventKind::MetricsTick, false, -1, 0, /*minute=*/1);
  }
  if (!cfg_.toggle.empty()) {
    schedule(us_from_s(cfg_.toggle.off_at_s), EventKind::NodeToggle, false, -1, 0, /*off=*/0);
    schedule(us_from_s(cfg_.toggle.on_at_s), EventKind::NodeToggle, false, -1, 0, /*on=*/1);
  }

  while (!queue_.empty() && queue_.top().time <= duration_us_) {
    SimEvent e = queue_.pop();
    now_ = e.time;
    ++counters_.events_dispatched;
    trace_hash_ = fnv_fold(trace_hash_, static_cast<std::uint64_t>(e.time));
    trace_hash_ = fnv_fold(trace_hash_, e.seq);
    trace_hash_ = fnv_fold(trace_hash_, static_cast<std::uint64_t>(e.kind));
    trace_hash_ = fnv_fold(trace_hash_, static_cast<std::uint64_t>(static_cast<std::int64_t>(e.node)));
    if (trace_ != nullptr) trace_event(e);
    dispatch(e);
  }

  counters_.out_of_order_dispatches = queue_.out_of_order_count();
  counters_.residual = 0;
  for (const auto& s : sources_) {
    counters_.residual += s.queue.size() + (s.tx_buffer.has_value() ? 1 : 0);
  }
  for (const auto& r : relays_) counters_.residual += r.queue.size();

  RunResult result;
  result.counters = counters_;
  result.trace_hash = trace_hash_;
  result.duration_s = cfg_.duration_s;
  result.summary = summarize(metrics_, cfg_.duration_s);
  result.metrics = std::move(metrics_);
  return result;
}

void Engine::trace_event(const SimEvent& e) {
  *trace_ << e.time << ' ' << e.seq << ' ' << to_string(e.kind) << ' '
          << (e.relay_target ? 'r' : 's') << e.node;
  if (const Packet* p = std::get_if<Packet>(&e.payload)) {
    *trace_ << " pkt=" << p->id;
  } else if (const ProbeReply* r = std::get_if<ProbeReply>(&e.payload)) {
    *trace_ << " reply_from=" << r->relay;
  } else if (e.tag != 0) {
    *trace_ << " tag=" << e.tag;
  }
  *trace_ << '\n';
}

void Engine::dispatch(const SimEvent& e) {
  switch (e.kind) {
    case EventKind::TrafficGen: return handle_traffic_gen(e);
    case EventKind::ServiceComplete: return handle_service_complete(e);
    case EventKind::PacketArrival: return handle_packet_arrival(e);
    case EventKind::AckTimeout: return handle_ack_timeout(e);
    case EventKind::SeekChannelDeadline: return handle_seek_channel_deadline(e);
    case EventKind::PeriodicSeekTimer: return handle_periodic_seek(e);
    case EventKind::MobilityStep: return handle_mobility_step(e);
    case EventKind::NodeToggle: return handle_node_toggle(e);
    case EventKind::MetricsTick: return handle_metrics_tick(e);
  }
}

// --- traffic ----------------------------------------------------------------

void Engine::handle_traffic_gen(const SimEvent& e) {
  auto& s = sources_[static_cast<std::size_t>(e.node)];
  if (e.epoch != s.life_epoch || !s.active) return;

  ++counters_.generated;
  if (s.queue.size() >= static_cast<std::size_t>(cfg_.radio.queue_bound)) {
    metrics_.record_drop(DropCause::SourceQueueOverflow);
  } else {
    Packet pkt;
    pkt.id = next_packet_id_++;
    pkt.origin = s.id;
    pkt.generated_at = now_;
    pkt.enqueued_at = now_;
    s.queue.push_back(pkt);
    load_tx_buffer(s);
    maybe_start_source_service(s);
  }
  schedule(now_ + us_from_ms(cfg_.traffic_interval_ms), EventKind::TrafficGen, false, s.id,
           s.life_epoch);
}

void Engine::load_tx_buffer(SourceNode& s) {
  // The transmit stage is one packet deep; its residency time is what the
  // node's own queuing-delay estimator measures. It keeps waiting across
  // seeks, so off-air time shows up in the estimate without dragging the
  // whole application backlog into it.
  if (s.tx_buffer.has_value() || s.queue.empty()) return;
  s.tx_buffer = s.queue.front();
  s.queue.pop_front();
  s.buffer_entered_at = now_;
}

void Engine::maybe_start_source_service(SourceNode& s) {
  if (s.busy || s.mode != SourceMode::Associated || !s.active) return;
  load_tx_buffer(s);
  if (!s.tx_buffer.has_value()) return;
  auto& relay = relays_[static_cast<std::size_t>(s.assoc->relay_id)];
  s.tx_buffer->source_hop = relay.spec.hops + 1;
  s.tx_buffer->channel = relay.spec.channel;
  s.busy = true;
  s.attempts = 0;
  schedule(now_ + service_us_, EventKind::ServiceComplete, false, s.id, s.service_epoch);
}

void Engine::maybe_start_relay_service(RelayNode& r) {
  if (r.busy || r.queue.empty()) return;
  r.busy = true;
  r.attempts = 0;
  schedule(now_ + service_us_, EventKind::ServiceComplete, true, r.spec.id, 0);
}

void Engine::handle_service_complete(const SimEvent& e) {
  if (e.relay_target) {
    relay_service_complete(relays_[static_cast<std::size_t>(e.node)]);
    return;
  }
  auto& s = sources_[static_cast<std::size_t>(e.node)];
  if (e.epoch != s.service_epoch || !s.busy || s.mode != SourceMode::Associated) return;
  source_service_complete(s);
}

void Engine::source_service_complete(SourceNode& s) {
  auto& relay = relays_[static_cast<std::size_t>(s.assoc->relay_id)];
  const double prr = link_prr(s, relay);
  const bool room = relay.queue.size() < static_cast<std::size_t>(cfg_.radio.queue_bound);
  const auto outcome = radio_.attempt_transmission(prr, rng_, room);

  if (outcome.has_value()) {
    Packet pkt = *s.tx_buffer;
    s.tx_buffer.reset();
    s.ewma = ewma_update(s.ewma, ms_from_us(now_ - s.buffer_entered_at));
    s.busy = false;
    s.attempts = 0;
    schedule(now_, EventKind::PacketArrival, true, relay.spec.id, 0, 0, pkt);
    maybe_start_source_service(s);
    return;
  }
  ++s.attempts;
  if (s.attempts >= 1 + cfg_.radio.max_retries) {
    s.tx_buffer.reset();
    metrics_.record_drop(DropCause::RetriesExhausted);
    s.busy = false;
    s.attempts = 0;
    maybe_start_source_service(s);
    return;
  }
  schedule(now_ + service_us_, EventKind::ServiceComplete, false, s.id, s.service_epoch);
}

void Engine::relay_service_complete(RelayNode& r) {
  const double prr = relay_uplink_prr(r);
  const bool room =
      r.spec.parent == kGateway ||
      relays_[static_cast<std::size_t>(r.spec.parent)].queue.size() <
          static_cast<std::size_t>(cfg_.radio.queue_bound);
  const auto outcome = radio_.attempt_transmission(prr, rng_, room);

  if (outcome.has_value()) {
    Packet pkt = r.queue.front();
    r.queue.pop_front();
    r.ewma = ewma_update(r.ewma, ms_from_us(now_ - pkt.enqueued_at));
    r.attempts = 0;

    const double advertised = advertised_delay_ms(r.spec.id);
    if (hooks_.on_advertisement) hooks_.on_advertisement(*this, r.spec.id, advertised);

    if (r.spec.parent == kGateway) {
      DeliveryRecord rec;
      rec.packet_id = pkt.id;
      rec.source = pkt.origin;
      rec.channel = pkt.channel;
      rec.source_hop = pkt.source_hop;
      rec.generated_at = pkt.generated_at;
      rec.delivered_at = now_;
      metrics_.record_delivery(rec, cfg_.radio.packet_bytes);
      ++counters_.delivered;
    } else {
      schedule(now_, EventKind::PacketArrival, true, r.spec.parent, 0, 0, pkt);
    }

    overhear_from_relay(r, advertised);
    r.busy = false;
    maybe_start_relay_service(r);
    return;
  }

  // The frame still went on the air: children overhear the stale estimate.
  const double advertised = advertised_delay_ms(r.spec.id);
  if (hooks_.on_advertisement) hooks_.on_advertisement(*this, r.spec.id, advertised);
  overhear_from_relay(r, advertised);

  ++r.attempts;
  if (r.attempts >= 1 + cfg_.radio.max_retries) {
    r.queue.pop_front();
    metrics_.record_drop(DropCause::RetriesExhausted);
    r.busy = false;
    r.attempts = 0;
    maybe_start_relay_service(r);
    return;
  }
  schedule(now_ + service_us_, EventKind::ServiceComplete, true, r.spec.id, 0);
}

void Engine::handle_packet_arrival(const SimEvent& e) {
  if (const ProbeReply* reply = std::get_if<ProbeReply>(&e.payload)) {
    auto& s = sources_[static_cast<std::size_t>(e.node)];
    if (e.epoch != s.service_epoch || s.mode != SourceMode::Seeking || !s.seek.has_value()) {
      ++counters_.late_replies;
      return;
    }
    const std::size_t cursor_before = s.seek->cursor;
    *s.seek = handle_reply(std::move(*s.seek), ReplyInfo{reply->relay, reply->advertised_delay_ms},
                           reply->lqi, now_);
    if (cfg_.protocol.seek_early_advance && s.seek->cursor == cursor_before &&
        s.seek->replies_on_current_channel > 0) {
      const TimeUs window_start = s.seek->per_channel_deadline - ack_timeout_us_;
      if (now_ >= window_start + ack_timeout_us_ / 2) close_seek_channel(s);
    }
    return;
  }

  auto& r = relays_[static_cast<std::size_t>(e.node)];
  const Packet& pkt = std::get<Packet>(e.payload);
  if (r.queue.size() >= static_cast<std::size_t>(cfg_.radio.queue_bound)) {
    metrics_.record_drop(DropCause::RelayQueueOverflow);
    return;
  }
  Packet stored = pkt;
  stored.enqueued_at = now_;
  r.queue.push_back(stored);
  maybe_start_relay_service(r);
}

// --- monitoring ---------------------------------------------------------------

void Engine::overhear_from_relay(RelayNode& r, double advertised_ms) {
  for (auto& s : sources_) {
    if (s.mode != SourceMode::Associated || s.assoc->relay_id != r.spec.id) continue;
    if (s.busy) continue;  // half-duplex: a transmitting radio hears nothing
    const double prr = link_prr(s, r);
    if (!rng_.bernoulli(prr)) continue;
    const double lqi = sample_lqi_from_prr(prr, rng_, cfg_.radio.lqi_noise);

    auto [next, decision] = on_overheard(std::move(*s.monitor), advertised_ms, lqi, s.ewma);
    s.monitor = std::move(next);
    if (hooks_.on_source_decision) {
      hooks_.on_source_decision(*this, s.id, s.monitor->current_d_ms);
    }
    if (decision.stay) {
      ++counters_.stay_decisions;
    } else {
      ++counters_.reseek_decisions[static_cast<int>(decision.reason)];
      start_seek(s);
    }
  }
}

// --- seeking ------------------------------------------------------------------

void Engine::start_seek(SourceNode& s) {
  if (s.mode == SourceMode::Seeking || !s.active) return;
  ++s.service_epoch;  // cancels in-flight service and stale seek events
  s.busy = false;
  s.attempts = 0;
  s.assoc.reset();
  s.monitor.reset();
  s.mode = SourceMode::Seeking;
  s.seek_started_at = now_;
  ++counters_.seeks_started;

  const TimeUs retune = radio_.sample_switch_delay_us(rng_);
  s.seek = begin_seek(s.id, cfg_.protocol.seek_channels, now_ + retune, ack_timeout_us_);
  emit_probe(s, now_ + retune);
  schedule(s.seek->per_channel_deadline, EventKind::AckTimeout, false, s.id, s.service_epoch,
           static_cast<std::int64_t>(s.seek->cursor));
}

void Engine::emit_probe(SourceNode& s, TimeUs emit_time) {
  const ChannelId channel = s.seek->current_channel();
  for (RelayId rid : topology_->relays_on_channel(channel)) {
    auto& relay = relays_[static_cast<std::size_t>(rid)];
    const double prr = link_prr(s, relay);
    if (!rng_.bernoulli(prr)) continue;  // probe not heard
    const double advertised = advertised_delay_ms(rid);
    if (hooks_.on_advertisement) hooks_.on_advertisement(*this, rid, advertised);
    if (!rng_.bernoulli(prr)) continue;  // reply lost on the way back
    const double lqi = sample_lqi_from_prr(prr, rng_, cfg_.radio.lqi_noise);
    const TimeUs arrival = emit_time + us_from_ms(rng_.uniform(kReplyJitterLoMs, kReplyJitterHiMs));
    schedule(arrival, EventKind::PacketArrival, false, s.id, s.service_epoch, 0,
             ProbeReply{rid, advertised, lqi});
  }
}

void Engine::handle_ack_timeout(const SimEvent& e) {
  auto& s = sources_[static_cast<std::size_t>(e.node)];
  if (e.epoch != s.service_epoch || s.mode != SourceMode::Seeking || !s.seek.has_value()) return;
  if (static_cast<std::size_t>(e.tag) != s.seek->cursor) return;  // channel already advanced

  if (s.seek->replies_on_current_channel > 0 && overhead_us_ > 0) {
    // Reply processing keeps the node on the channel a little longer.
    schedule(now_ + overhead_us_, EventKind::SeekChannelDeadline, false, s.id, s.service_epoch,
             static_cast<std::int64_t>(s.seek->cursor));
    return;
  }
  advance_seek(s);
}

void Engine::handle_seek_channel_deadline(const SimEvent& e) {
  auto& s = sources_[static_cast<std::size_t>(e.node)];
  if (e.epoch != s.service_epoch || s.mode != SourceMode::Seeking || !s.seek.has_value()) return;
  if (static_cast<std::size_t>(e.tag) != s.seek->cursor) return;
  advance_seek(s);
}

void Engine::close_seek_channel(SourceNode& s) {
  if (s.seek->replies_on_current_channel > 0 && overhead_us_ > 0) {
    schedule(now_ + overhead_us_, EventKind::SeekChannelDeadline, false, s.id, s.service_epoch,
             static_cast<std::int64_t>(s.seek->cursor));
  } else {
    advance_seek(s);
  }
}

void Engine::advance_seek(SourceNode& s) {
  const TimeUs retune = radio_.sample_switch_delay_us(rng_);
  const AdvanceResult result = advance_channel(*s.seek, now_, retune, ack_timeout_us_);
  if (std::holds_alternative<ProbeNext>(result)) {
    emit_probe(s, now_ + retune);
    schedule(s.seek->per_channel_deadline, EventKind::AckTimeout, false, s.id, s.service_epoch,
             static_cast<std::int64_t>(s.seek->cursor));
    return;
  }
  finish_seek(s);
}

void Engine::finish_seek(SourceNode& s) {
  counters_.late_replies += static_cast<std::uint64_t>(s.seek->late_replies_ignored);

  SeekRecord rec;
  rec.node = s.id;
  rec.start_us = s.seek_started_at;
  rec.duration_ms = ms_from_us(now_ - s.seek_started_at);
  rec.channels_probed = static_cast<int>(s.seek->channel_list.size());

  try {
    const Selection sel = select_candidate(s.seek->table);
    rec.result = SeekResult::Selected;
    metrics_.record_seek(rec);

    s.mode = SourceMode::Associated;
    s.assoc = sel;
    s.monitor = init_monitor(sel, cfg_.protocol.monitor);
    if (s.last_channel.has_value() && *s.last_channel != sel.channel) {
      metrics_.record_switch(s.id);
    }
    s.last_channel = sel.channel;
    ++counters_.seeks_selected;
    s.seek.reset();
    maybe_start_source_service(s);
  } catch (const NoCandidates&) {
    rec.result = SeekResult::NoCandidates;
    metrics_.record_seek(rec);
    s.mode = SourceMode::Idle;
    s.seek.reset();
    ++counters_.seeks_empty;
    schedule(now_ + us_from_ms(cfg_.protocol.reseek_backoff_ms), EventKind::PeriodicSeekTimer,
             false, s.id, s.service_epoch, /*one-shot=*/0);
  }
}

void Engine::handle_periodic_seek(const SimEvent& e) {
  auto& s = sources_[static_cast<std::size_t>(e.node)];
  const bool recurring = e.tag == 1;
  if (recurring) {
    if (e.epoch != s.life_epoch) return;
    schedule(now_ + us_from_s(cfg_.protocol.periodic_seek_s), EventKind::PeriodicSeekTimer, false,
             s.id, s.life_epoch, 1);
  } else {
    if (e.epoch != s.service_epoch) return;  // retry superseded by a newer seek
  }
  if (s.active && s.mode != SourceMode::Seeking) start_seek(s);
}

// --- environment ----------------------------------------------------------------

void Engine::handle_mobility_step(const SimEvent&) {
  const double dt = ms_from_us(kMobilityStepUs) / 1000.0;
  for (auto& s : sources_) {
    if (!s.walker) continue;
    double pos = s.pos_m + static_cast<double>(s.direction) * s.speed_mps * dt;
    const double length = topology_->hallway_m();
    while (pos < 0.0 || pos > length) {
      if (pos > length) {
        pos = 2.0 * length - pos;
        s.direction = -1;
      } else {
        pos = -pos;
        s.direction = 1;
      }
    }
    s.pos_m = pos;
  }
  schedule(now_ + kMobilityStepUs, EventKind::MobilityStep, false, -1, 0);
}

void Engine::handle_node_toggle(const SimEvent& e) {
  const bool turning_on = e.tag == 1;
  for (NodeId id : cfg_.toggle.nodes) {
    auto& s = sources_[static_cast<std::size_t>(id)];
    if (turning_on) {
      s.active = true;
      ++s.life_epoch;
      ++s.service_epoch;
      const TimeUs gen_offset =
          static_cast<TimeUs>(rng_.uniform01() * cfg_.traffic_interval_ms * 1000.0);
      schedule(now_ + gen_offset, EventKind::TrafficGen, false, s.id, s.life_epoch);
      schedule(now_, EventKind::PeriodicSeekTimer, false, s.id, s.life_epoch, /*recurring=*/1);
    } else {
      s.active = false;
      ++s.life_epoch;
      ++s.service_epoch;
      s.busy = false;
      s.attempts = 0;
      std::uint64_t flushed = s.queue.size() + (s.tx_buffer.has_value() ? 1 : 0);
      if (flushed > 0) {
        metrics_.record_drop(DropCause::NodeTurnedOff, flushed);
        s.queue.clear();
        s.tx_buffer.reset();
      }
      s.mode = SourceMode::Idle;
      s.assoc.reset();
      s.monitor.reset();
      s.seek.reset();
    }
  }
}

void Engine::handle_metrics_tick(const SimEvent& e) {
  const int minute = static_cast<int>(e.tag);
  for (ChannelId ch : cfg_.channels) {
    int count = 0;
    for (const auto& s : sources_) {
      if (s.mode == SourceMode::Associated && s.assoc->channel == ch) ++count;
    }
    metrics_.record_occupancy(minute, ch, count);
  }
  const TimeUs next = us_from_s(60.0 * (minute + 1));
  if (next <= duration_us_) {
    schedule(next, EventKind::MetricsTick, false, -1, 0, minute + 1);
  }
}

// --- queries ----------------------------------------------------------------

double Engine::link_prr(const SourceNode& s, const RelayNode& r) const {
  return radio_.prr_of_distance(std::abs(s.pos_m - r.spec.pos_m), r.spec.channel);
}

double Engine::relay_uplink_prr(const RelayNode& r) const {
  const double parent_pos = r.spec.parent == kGateway
                                ? topology_->gateway_pos_m()
                                : relays_[static_cast<std::size_t>(r.spec.parent)].spec.pos_m;
  return radio_.prr_of_distance(std::abs(r.spec.pos_m - parent_pos), r.spec.channel);
}

double Engine::advertised_delay_ms(RelayId r) const {
  double total = 0.0;
  for (RelayId cur = r; cur != kGateway;
       cur = relays_[static_cast<std::size_t>(cur)].spec.parent) {
    total = path_delay_aggregate(relays_[static_cast<std::size_t>(cur)].ewma, PathDelay{total})
                .total_ms;
  }
  return total;
}

double Engine::relay_local_delay_ms(RelayId r) const {
  return relays_[static_cast<std::size_t>(r)].ewma.contribution_ms();
}

RelayId Engine::relay_parent(RelayId r) const {
  return relays_[static_cast<std::size_t>(r)].spec.parent;
}

double Engine::source_local_delay_ms(NodeId s) const {
  return sources_[static_cast<std::size_t>(s)].ewma.contribution_ms();
}

std::optional<RelayId> Engine::source_relay(NodeId s) const {
  const auto& src = sources_[static_cast<std::size_t>(s)];
  if (!src.assoc.has_value()) return std::nullopt;
  return src.assoc->relay_id;
}

std::optional<ChannelId> Engine::source_channel(NodeId s) const {
  const auto& src = sources_[static_cast<std::size_t>(s)];
  if (!src.assoc.has_value()) return std::nullopt;
  return src.assoc->channel;
}

bool Engine::source_associated(NodeId s) const {
  return sources_[static_cast<std::size_t>(s)].mode == SourceMode::Associated;
}

}  // namespace dynachan
