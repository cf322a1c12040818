#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dynachan/metrics.hpp"
#include "dynachan/rng.hpp"

using namespace dynachan;

namespace {

DeliveryRecord make_record(std::uint64_t id, ChannelId ch, int hop, TimeUs gen, TimeUs del) {
  DeliveryRecord r;
  r.packet_id = id;
  r.source = 1;
  r.channel = ch;
  r.source_hop = hop;
  r.generated_at = gen;
  r.delivered_at = del;
  return r;
}

}  // namespace

TEST_CASE("deliveries accumulate payload bits per channel") {
  MetricsStore store;
  store.record_delivery(make_record(1, 25, 2, 0, 40000), 114);
  CHECK(store.payload_bits_by_channel().at(25) == 912);
  CHECK(store.deliveries().size() == 1);
  CHECK(store.deliveries()[0].e2e_latency_ms() == doctest::Approx(40.0));
}

TEST_CASE("causality violations fail hard") {
  MetricsStore store;
  CHECK_THROWS_AS(store.record_delivery(make_record(1, 25, 2, 40000, 40000), 114),
                  std::logic_error);
  CHECK_THROWS_AS(store.record_delivery(make_record(1, 25, 2, 41000, 40000), 114),
                  std::logic_error);
}

TEST_CASE("summary group means equal a naive grouping oracle") {
  Rng rng(404);
  MetricsStore store;
  std::map<std::pair<ChannelId, int>, std::vector<double>> oracle;
  for (int i = 0; i < 5000; ++i) {
    const ChannelId ch = rng.bernoulli(0.5) ? 25 : 26;
    const int hop = 2 + static_cast<int>(rng.below(4));
    const TimeUs gen = static_cast<TimeUs>(rng.below(1000000));
    const TimeUs del = gen + 1 + static_cast<TimeUs>(rng.below(500000));
    store.record_delivery(make_record(static_cast<std::uint64_t>(i), ch, hop, gen, del), 114);
    oracle[{ch, hop}].push_back(ms_from_us(del - gen));
  }

  const SummaryTables summary = summarize(store, 60.0);
  REQUIRE(summary.latency.size() == oracle.size());
  for (const auto& group : summary.latency) {
    const auto& samples = oracle.at({group.channel, group.source_hop});
    double sum = 0.0;
    double lo = samples[0];
    double hi = samples[0];
    for (double v : samples) {
      sum += v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(group.count == samples.size());
    CHECK(group.mean_ms == doctest::Approx(sum / samples.size()).epsilon(1e-9));
    CHECK(group.min_ms == doctest::Approx(lo));
    CHECK(group.max_ms == doctest::Approx(hi));
  }
}

TEST_CASE("summary is permutation invariant") {
  std::vector<DeliveryRecord> records;
  Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    const TimeUs gen = static_cast<TimeUs>(rng.below(100000));
    records.push_back(make_record(static_cast<std::uint64_t>(i), 25, 2, gen,
                                  gen + 1 + static_cast<TimeUs>(rng.below(90000))));
  }
  MetricsStore forward;
  for (const auto& r : records) forward.record_delivery(r, 114);
  MetricsStore backward;
  for (auto it = records.rbegin(); it != records.rend(); ++it) backward.record_delivery(*it, 114);

  const SummaryTables a = summarize(forward, 10.0);
  const SummaryTables b = summarize(backward, 10.0);
  REQUIRE(a.latency.size() == b.latency.size());
  CHECK(a.latency[0].mean_ms == doctest::Approx(b.latency[0].mean_ms).epsilon(1e-12));
  CHECK(a.throughput[0].kbps == doctest::Approx(b.throughput[0].kbps).epsilon(1e-12));
}

TEST_CASE("throughput times duration equals delivered bits exactly") {
  MetricsStore store;
  const int n = 321;
  for (int i = 0; i < n; ++i) {
    store.record_delivery(make_record(static_cast<std::uint64_t>(i), 26, 2, i * 1000,
                                      i * 1000 + 500), 114);
  }
  const double duration_s = 12.5;
  const SummaryTables summary = summarize(store, duration_s);
  REQUIRE(summary.throughput.size() == 1);
  CHECK(summary.throughput[0].kbps * duration_s * 1000.0 ==
        doctest::Approx(static_cast<double>(n) * 912.0).epsilon(1e-12));
}

TEST_CASE("empty store summarizes to empty tables") {
  MetricsStore store;
  const SummaryTables summary = summarize(store, 60.0);
  CHECK(summary.latency.empty());
  CHECK(summary.throughput.empty());
  CHECK(summary.aggregate_kbps == 0.0);
  CHECK(summary.seek_mean_ms == 0.0);
}

TEST_CASE("CSV files carry the documented headers") {
  MetricsStore store;
  store.record_delivery(make_record(1, 25, 2, 0, 40000), 114);
  store.record_occupancy(1, 25, 23);
  store.record_occupancy(1, 26, 22);
  store.record_seek(SeekRecord{4, 1000, 63.76, 2, SeekResult::Selected});
  store.ensure_node(4);
  store.record_switch(4);
  store.record_drop(DropCause::RetriesExhausted, 3);

  const auto dir = std::filesystem::temp_directory_path() / "dynachan_csv_test";
  std::filesystem::remove_all(dir);
  const SummaryTables summary = summarize(store, 60.0);
  const auto files = write_csv_files(store, summary, dir.string());
  CHECK(files.size() == 6);

  const std::map<std::string, std::string> expected_headers = {
      {"occupancy.csv", "minute,channel,node_count"},
      {"latency.csv", "channel,source_hop,mean_ms,min_ms,max_ms,count"},
      {"throughput.csv", "channel,kbps"},
      {"seeks.csv", "node,start_us,duration_ms,channels_probed,result"},
      {"switches.csv", "node,count"},
      {"drops.csv", "cause,count"},
  };
  for (const auto& [name, header] : expected_headers) {
    std::ifstream in(dir / name, std::ios::binary);
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line == header);
    // LF endings: getline must not leave a trailing CR.
    CHECK(first_line.find('\r') == std::string::npos);
  }

  std::ifstream drops(dir / "drops.csv");
  std::string line;
  std::getline(drops, line);
  std::getline(drops, line);
  CHECK(line == "retries_exhausted,3");
  std::filesystem::remove_all(dir);
}
