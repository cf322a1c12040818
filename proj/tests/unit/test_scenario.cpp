#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dynachan/scenario.hpp"

using namespace dynachan;

TEST_CASE("builtin steady-high matches the reference setup") {
  const ScenarioConfig cfg = load_scenario("steady-high");
  CHECK(cfg.source_count == 45);
  CHECK(cfg.traffic_interval_ms == doctest::Approx(128.0));
  CHECK(cfg.channels == std::vector<ChannelId>{25, 26});
  CHECK(cfg.duration_s == doctest::Approx(3600.0));
  CHECK(cfg.layout.relays_per_channel == 4);
  CHECK(cfg.protocol.monitor.tau_d == doctest::Approx(0.9));
  CHECK(cfg.protocol.monitor.delay_requirement_ms == doctest::Approx(500.0));
  CHECK(cfg.protocol.periodic_seek_s == doctest::Approx(30.0));
}

TEST_CASE("builtin dynamic-high blacks out half the nodes mid-run") {
  const ScenarioConfig cfg = load_scenario("dynamic-high");
  CHECK(cfg.toggle.nodes.size() == 23);
  CHECK(cfg.toggle.off_at_s == doctest::Approx(1800.0));
  CHECK(cfg.toggle.on_at_s == doctest::Approx(2700.0));
  CHECK(cfg.traffic_interval_ms == doctest::Approx(128.0));
}

TEST_CASE("builtin mobile-high carries five nodes in two groups") {
  const ScenarioConfig cfg = load_scenario("mobile-high");
  REQUIRE(cfg.walkers.size() == 2);
  CHECK(cfg.walkers[0].ids.size() == 2);
  CHECK(cfg.walkers[1].ids.size() == 3);
  CHECK(cfg.duration_s == doctest::Approx(1200.0));
  CHECK(cfg.traffic_interval_ms == doctest::Approx(128.0));
}

TEST_CASE("builtin four-channel-dynamic probes four channels") {
  const ScenarioConfig cfg = load_scenario("four-channel-dynamic");
  CHECK(cfg.channels == std::vector<ChannelId>{23, 24, 25, 26});
  CHECK(cfg.protocol.seek_channels == cfg.channels);
  CHECK(cfg.toggle.nodes.size() == 23);
}

TEST_CASE("builtin throughput-cal is one relay with five saturating senders") {
  const ScenarioConfig cfg = load_scenario("throughput-cal");
  CHECK(cfg.layout.relays_per_channel == 1);
  CHECK(cfg.source_count == 5);
  CHECK(cfg.radio.packet_bytes == 114);
  CHECK(cfg.traffic_interval_ms < 23.448);  // faster than one service time
}

TEST_CASE("invalid channel is reported by field name") {
  ScenarioConfig cfg = builtin_scenario("steady-low");
  cfg.channels.push_back(27);
  try {
    cfg.validate();
    FAIL("expected a validation error");
  } catch (const ScenarioError& e) {
    CHECK(e.field == "channels");
  }
}

TEST_CASE("unknown toggle node is rejected at load time") {
  ScenarioConfig cfg = builtin_scenario("dynamic-high");
  cfg.toggle.nodes.push_back(99);
  try {
    cfg.validate();
    FAIL("expected a validation error");
  } catch (const ScenarioError& e) {
    CHECK(e.field == "toggle.nodes");
  }
}

TEST_CASE("scenario JSON round trip preserves the config") {
  const ScenarioConfig cfg = builtin_scenario("four-channel-dynamic");
  const ScenarioConfig back = scenario_from_json_string(to_json_string(cfg));
  CHECK(back.name == cfg.name);
  CHECK(back.channels == cfg.channels);
  CHECK(back.duration_s == doctest::Approx(cfg.duration_s));
  CHECK(back.toggle.nodes == cfg.toggle.nodes);
  CHECK(back.traffic_interval_ms == doctest::Approx(cfg.traffic_interval_ms));
  CHECK(back.protocol.seek_channels == cfg.protocol.seek_channels);
  CHECK(back.radio.queue_bound == cfg.radio.queue_bound);
}

TEST_CASE("file loading applies overrides on top of a builtin base") {
  const auto path = std::filesystem::temp_directory_path() / "dynachan_scenario_test.json";
  {
    std::ofstream out(path);
    out << R"({"name": "steady-high", "duration_s": 300, "seed": 17})";
  }
  const ScenarioConfig cfg = load_scenario(path.string());
  CHECK(cfg.source_count == 45);               // inherited
  CHECK(cfg.duration_s == doctest::Approx(300.0));  // overridden
  CHECK(cfg.seed == 17);
  std::filesystem::remove(path);
}

TEST_CASE("malformed JSON names the document") {
  const auto path = std::filesystem::temp_directory_path() / "dynachan_bad_test.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_scenario(path.string()), ScenarioError);
  std::filesystem::remove(path);
}

TEST_CASE("duration rescaling moves toggle times proportionally") {
  ScenarioConfig cfg = builtin_scenario("dynamic-high");
  cfg.rescale_duration(1200.0);  // 3600 -> 1200: factor 1/3
  CHECK(cfg.duration_s == doctest::Approx(1200.0));
  CHECK(cfg.toggle.off_at_s == doctest::Approx(600.0));
  CHECK(cfg.toggle.on_at_s == doctest::Approx(900.0));
  CHECK(cfg.scaled);
}

TEST_CASE("auto positions spread sources along the hallway") {
  const ScenarioConfig cfg = builtin_scenario("steady-low");
  const auto pos = cfg.positions();
  REQUIRE(pos.size() == 45);
  CHECK(pos.front() > 0.0);
  CHECK(pos.back() < cfg.layout.hallway_m);
  for (std::size_t i = 1; i < pos.size(); ++i) CHECK(pos[i] > pos[i - 1]);
}
