#ifndef DYNACHAN_METRICS_HPP
#define DYNACHAN_METRICS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dynachan/types.hpp"

namespace dynachan {

struct DeliveryRecord {
  std::uint64_t packet_id = 0;
  NodeId source = 0;
  ChannelId channel = 0;
  int source_hop = 0;  // backbone hops of the first relay + 1 for the source link
  TimeUs generated_at = 0;
  TimeUs delivered_at = 0;

  double e2e_latency_ms() const { return ms_from_us(delivered_at - generated_at); }
};

struct OccupancyRow {
  int minute = 0;  // 1-based, sampled at the end of the minute
  ChannelId channel = 0;
  int node_count = 0;
};

enum class SeekResult { Selected, NoCandidates };

struct SeekRecord {
  NodeId node = 0;
  TimeUs start_us = 0;
  double duration_ms = 0.0;
  int channels_probed = 0;
  SeekResult result = SeekResult::Selected;
};

/// Well-known drop causes; the CSV always lists all of them so runs are
/// comparable row-for-row.
enum class DropCause { RetriesExhausted, RelayQueueOverflow, SourceQueueOverflow, NodeTurnedOff };
constexpr int kDropCauseCount = 4;
const char* to_string(DropCause c);

class MetricsStore {
 public:
  /// Appends a delivery and credits its payload bits to the channel
  /// throughput accumulator. Records violating delivered_at > generated_at
  /// indicate a kernel bug and fail hard.
  void record_delivery(const DeliveryRecord& rec, int payload_bytes);

  void record_occupancy(int minute, ChannelId channel, int node_count);
  void record_seek(const SeekRecord& rec);
  void record_switch(NodeId node) { ++switch_counts_[node]; }
  void ensure_node(NodeId node) { switch_counts_.try_emplace(node, 0); }
  void record_drop(DropCause cause, std::uint64_t count = 1) {
    drop_counts_[static_cast<int>(cause)] += count;
  }

  const std::vector<DeliveryRecord>& deliveries() const { return deliveries_; }
  const std::vector<OccupancyRow>& occupancy() const { return occupancy_; }
  const std::vector<SeekRecord>& seeks() const { return seeks_; }
  const std::map<NodeId, std::uint64_t>& switch_counts() const { return switch_counts_; }
  std::uint64_t drops(DropCause cause) const { return drop_counts_[static_cast<int>(cause)]; }
  std::uint64_t total_drops() const;
  const std::map<ChannelId, std::uint64_t>& payload_bits_by_channel() const {
    return payload_bits_by_channel_;
  }

 private:
  std::vector<DeliveryRecord> deliveries_;
  std::vector<OccupancyRow> occupancy_;
  std::vector<SeekRecord> seeks_;
  std::map<NodeId, std::uint64_t> switch_counts_;
  std::uint64_t drop_counts_[kDropCauseCount] = {0, 0, 0, 0};
  std::map<ChannelId, std::uint64_t> payload_bits_by_channel_;
};

struct LatencyGroup {
  ChannelId channel = 0;
  int source_hop = 0;
  double mean_ms = 0.0;
  double min_ms = 0.0;
  double max_ms = 0.0;
  std::uint64_t count = 0;
};

struct ThroughputRow {
  ChannelId channel = 0;
  double kbps = 0.0;
};

struct SummaryTables {
  std::vector<OccupancyRow> occupancy;       // in recording order
  std::vector<LatencyGroup> latency;         // sorted by (channel, hop)
  std::vector<ThroughputRow> throughput;     // sorted by channel
  double aggregate_kbps = 0.0;
  double seek_mean_ms = 0.0;
  double seek_max_ms = 0.0;
  std::map<NodeId, std::uint64_t> switches;
};

/// Pure reduction of the store into the evaluation tables. Latency groups
/// are computed over all deliveries; group means do not depend on record
/// order.
SummaryTables summarize(const MetricsStore& store, double duration_s);

/// Writes the six CSV files (occupancy, latency, throughput, seeks,
/// switches, drops) into `dir`. Comma separated, header row, LF endings.
/// Latency columns are reported in whole milliseconds. Returns the file
/// names written.
std::vector<std::string> write_csv_files(const MetricsStore& store, const SummaryTables& summary,
                                         const std::string& dir);

}  // namespace dynachan

#endif  // DYNACHAN_METRICS_HPP
