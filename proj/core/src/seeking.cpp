#include "dynachan/seeking.hpp"

namespace dynachan {

SeekState begin_seek(NodeId source_id, std::vector<ChannelId> channel_list, TimeUs now,
                     TimeUs ack_timeout_us) {
  if (channel_list.empty()) throw EmptyChannelList();
  for (ChannelId c : channel_list) {
    if (!is_valid_channel(c)) {
      throw std::invalid_argument("seek channel list contains an invalid channel");
    }
  }
  SeekState state;
  state.source_id = source_id;
  state.channel_list = std::move(channel_list);
  state.cursor = 0;
  state.phase_start = now;
  state.per_channel_deadline = now + ack_timeout_us;
  return state;
}

SeekState handle_reply(SeekState state, const ReplyInfo& reply, double lqi_sample, TimeUs now) {
  if (state.exhausted() || now > state.per_channel_deadline) {
    ++state.late_replies_ignored;
    return state;
  }
  CandidateEntry entry;
  entry.relay_id = reply.relay_id;
  entry.channel = state.current_channel();
  entry.link_class = classify_link(lqi_sample);  // window of one sample
  entry.advertised_delay = PathDelay{reply.advertised_delay_ms};
  entry.lqi_sample = lqi_sample;
  state.table.upsert(entry);
  ++state.replies_on_current_channel;
  return state;
}

AdvanceResult advance_channel(SeekState& state, TimeUs now, TimeUs switch_delay_us,
                              TimeUs ack_timeout_us) {
  ++state.cursor;
  state.replies_on_current_channel = 0;
  if (state.cursor < state.channel_list.size()) {
    state.per_channel_deadline = now + switch_delay_us + ack_timeout_us;
    return ProbeNext{state.current_channel(), state.per_channel_deadline};
  }
  return SeekDone{};
}

Selection select_candidate(const CandidateTable& table) {
  if (table.empty()) throw NoCandidates();

  const auto rows = table.rows();
  const CandidateEntry* best = nullptr;
  for (const auto& row : rows) {
    if (best == nullptr) {
      best = &row;
      continue;
    }
    // Lexicographic: class desc, delay asc, relay asc, channel asc.
    if (row.link_class != best->link_class) {
      if (row.link_class > best->link_class) best = &row;
      continue;
    }
    if (row.advertised_delay.total_ms != best->advertised_delay.total_ms) {
      if (row.advertised_delay.total_ms < best->advertised_delay.total_ms) best = &row;
      continue;
    }
    if (row.relay_id != best->relay_id) {
      if (row.relay_id < best->relay_id) best = &row;
      continue;
    }
    if (row.channel < best->channel) best = &row;
  }

  Selection sel;
  sel.relay_id = best->relay_id;
  sel.channel = best->channel;
  sel.baseline_delay = best->advertised_delay;
  sel.baseline_lqi = best->lqi_sample;
  sel.baseline_class = best->link_class;
  return sel;
}

}  // namespace dynachan
