#include "dynachan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace dynachan {

const char* to_string(DropCause c) {
  switch (c) {
    case DropCause::RetriesExhausted: return "retries_exhausted";
    case DropCause::RelayQueueOverflow: return "relay_queue_overflow";
    case DropCause::SourceQueueOverflow: return "source_queue_overflow";
    default: return "node_turned_off";
  }
}

void MetricsStore::record_delivery(const DeliveryRecord& rec, int payload_bytes) {
  if (rec.delivered_at <= rec.generated_at) {
    throw std::logic_error("delivery record violates delivered_at > generated_at");
  }
  deliveries_.push_back(rec);
  payload_bits_by_channel_[rec.channel] += static_cast<std::uint64_t>(payload_bytes) * 8u;
}

void MetricsStore::record_occupancy(int minute, ChannelId channel, int node_count) {
  occupancy_.push_back(OccupancyRow{minute, channel, node_count});
}

void MetricsStore::record_seek(const SeekRecord& rec) { seeks_.push_back(rec); }

std::uint64_t MetricsStore::total_drops() const {
  std::uint64_t sum = 0;
  for (std::uint64_t c : drop_counts_) sum += c;
  return sum;
}

SummaryTables summarize(const MetricsStore& store, double duration_s) {
  SummaryTables out;
  out.occupancy = store.occupancy();
  out.switches = store.switch_counts();

  struct Acc {
    double sum = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::uint64_t count = 0;
  };
  std::map<std::pair<ChannelId, int>, Acc> groups;
  for (const auto& rec : store.deliveries()) {
    auto& acc = groups[{rec.channel, rec.source_hop}];
    const double ms = rec.e2e_latency_ms();
    if (acc.count == 0) {
      acc.min = ms;
      acc.max = ms;
    } else {
      acc.min = std::min(acc.min, ms);
      acc.max = std::max(acc.max, ms);
    }
    acc.sum += ms;
    ++acc.count;
  }
  for (const auto& [key, acc] : groups) {
    LatencyGroup g;
    g.channel = key.first;
    g.source_hop = key.second;
    g.mean_ms = acc.sum / static_cast<double>(acc.count);
    g.min_ms = acc.min;
    g.max_ms = acc.max;
    g.count = acc.count;
    out.latency.push_back(g);
  }

  for (const auto& [channel, bits] : store.payload_bits_by_channel()) {
    ThroughputRow row;
    row.channel = channel;
    row.kbps = duration_s > 0.0 ? static_cast<double>(bits) / duration_s / 1000.0 : 0.0;
    out.throughput.push_back(row);
    out.aggregate_kbps += row.kbps;
  }

  if (!store.seeks().empty()) {
    double sum = 0.0;
    double max = 0.0;
    for (const auto& s : store.seeks()) {
      sum += s.duration_ms;
      max = std::max(max, s.duration_ms);
    }
    out.seek_mean_ms = sum / static_cast<double>(store.seeks().size());
    out.seek_max_ms = max;
  }
  return out;
}

namespace {

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + name + " for writing in " + dir);
  return out;
}

}  // namespace

std::vector<std::string> write_csv_files(const MetricsStore& store, const SummaryTables& summary,
                                         const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;

  {
    auto out = open_csv(dir, "occupancy.csv");
    out << "minute,channel,node_count\n";
    for (const auto& row : summary.occupancy) {
      out << row.minute << ',' << row.channel << ',' << row.node_count << '\n';
    }
    written.push_back("occupancy.csv");
  }
  {
    // Latency leaves fractional precision behind at this boundary: the
    // estimator runs on fractional milliseconds, reports round to whole ms.
    auto out = open_csv(dir, "latency.csv");
    out << "channel,source_hop,mean_ms,min_ms,max_ms,count\n";
    for (const auto& g : summary.latency) {
      out << g.channel << ',' << g.source_hop << ',' << std::llround(g.mean_ms) << ','
          << std::llround(g.min_ms) << ',' << std::llround(g.max_ms) << ',' << g.count << '\n';
    }
    written.push_back("latency.csv");
  }
  {
    auto out = open_csv(dir, "throughput.csv");
    out << "channel,kbps\n";
    for (const auto& row : summary.throughput) {
      out << row.channel << ',' << format_fixed(row.kbps, 3) << '\n';
    }
    written.push_back("throughput.csv");
  }
  {
    auto out = open_csv(dir, "seeks.csv");
    out << "node,start_us,duration_ms,channels_probed,result\n";
    for (const auto& s : store.seeks()) {
      out << s.node << ',' << s.start_us << ',' << format_fixed(s.duration_ms, 3) << ','
          << s.channels_probed << ','
          << (s.result == SeekResult::Selected ? "selected" : "no_candidates") << '\n';
    }
    written.push_back("seeks.csv");
  }
  {
    auto out = open_csv(dir, "switches.csv");
    out << "node,count\n";
    for (const auto& [node, count] : summary.switches) {
      out << node << ',' << count << '\n';
    }
    written.push_back("switches.csv");
  }
  {
    auto out = open_csv(dir, "drops.csv");
    out << "cause,count\n";
    for (int c = 0; c < kDropCauseCount; ++c) {
      out << to_string(static_cast<DropCause>(c)) << ',' << store.drops(static_cast<DropCause>(c))
          << '\n';
    }
    written.push_back("drops.csv");
  }
  return written;
}

}  // namespace dynachan
