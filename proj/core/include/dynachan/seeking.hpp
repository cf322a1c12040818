#ifndef DYNACHAN_SEEKING_HPP
#define DYNACHAN_SEEKING_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "dynachan/delay.hpp"
#include "dynachan/lqi.hpp"
#include "dynachan/types.hpp"

namespace dynachan {

/// One row of the per-seek candidate table: a relay that answered a probe
/// on some channel, the single-sample link classification of its reply,
/// and the end-to-end delay it advertised.
struct CandidateEntry {
  RelayId relay_id = 0;
  ChannelId channel = 0;
  LinkClass link_class = LinkClass::Poor;
  PathDelay advertised_delay;
  double lqi_sample = 0.0;  // the raw sample behind link_class; seeds the monitor baseline
};

/// Candidate rows keyed by (relay, channel); a later reply from the same
/// relay on the same channel overwrites the earlier row.
class CandidateTable {
 public:
  void upsert(const CandidateEntry& e) { entries_[{e.relay_id, e.channel}] = e; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::vector<CandidateEntry> rows() const {
    std::vector<CandidateEntry> out;
    out.reserve(entries_.size());
    for (const auto& [key, e] : entries_) out.push_back(e);
    return out;
  }

 private:
  std::map<std::pair<RelayId, ChannelId>, CandidateEntry> entries_;
};

/// The attachment chosen at the end of a seek, with the baseline values
/// the monitoring phase starts from.
struct Selection {
  RelayId relay_id = 0;
  ChannelId channel = 0;
  PathDelay baseline_delay;
  double baseline_lqi = 0.0;
  LinkClass baseline_class = LinkClass::Poor;
};

struct SeekState {
  NodeId source_id = 0;
  std::vector<ChannelId> channel_list;
  std::size_t cursor = 0;
  CandidateTable table;
  TimeUs phase_start = 0;
  TimeUs per_channel_deadline = 0;
  int replies_on_current_channel = 0;
  int late_replies_ignored = 0;

  ChannelId current_channel() const { return channel_list[cursor]; }
  bool exhausted() const { return cursor >= channel_list.size(); }
};

struct EmptyChannelList : std::invalid_argument {
  EmptyChannelList() : std::invalid_argument("seek started with an empty channel list") {}
};

struct NoCandidates : std::runtime_error {
  NoCandidates() : std::runtime_error("candidate table is empty") {}
};

/// Starts a seek at `now`: empty table, cursor on the first channel, reply
/// window closing at now + ack_timeout. The caller broadcasts the probe on
/// channel_list[0].
SeekState begin_seek(NodeId source_id, std::vector<ChannelId> channel_list, TimeUs now,
                     TimeUs ack_timeout_us);

struct ReplyInfo {
  RelayId relay_id = 0;
  double advertised_delay_ms = 0.0;
};

/// Folds a probe reply into the candidate table. The reply's single LQI
/// sample classifies the link (seek phase runs with a window of one).
/// Replies arriving after the channel deadline or for a finished seek are
/// counted and dropped.
SeekState handle_reply(SeekState state, const ReplyInfo& reply, double lqi_sample, TimeUs now);

struct ProbeNext {
  ChannelId channel = 0;
  TimeUs deadline = 0;
};
struct SeekDone {};
using AdvanceResult = std::variant<ProbeNext, SeekDone>;

/// Moves the cursor past the current channel once its window has closed.
/// Either yields the next channel to probe, with a fresh deadline that
/// accounts for the sampled retune delay, or reports the seek finished.
AdvanceResult advance_channel(SeekState& state, TimeUs now, TimeUs switch_delay_us,
                              TimeUs ack_timeout_us);

/// Selection rule: best class first (good, then fair, then poor), smallest
/// advertised delay within the class; remaining ties fall to the lowest
/// relay id, then the lowest channel. The result is independent of the
/// order replies arrived in.
Selection select_candidate(const CandidateTable& table);

}  // namespace dynachan

#endif  // DYNACHAN_SEEKING_HPP
