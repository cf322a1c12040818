#include <benchmark/benchmark.h>

#include "dynachan/engine.hpp"
#include "dynachan/event_queue.hpp"
#include "dynachan/rng.hpp"

namespace {

using namespace dynachan;

void BM_EventQueueChurn(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  Rng rng(1);
  for (auto _ : state) {
    EventQueue q;
    for (int i = 0; i < depth; ++i) {
      SimEvent e;
      e.time = static_cast<TimeUs>(rng.below(1000000));
      q.push(e);
    }
    while (!q.empty()) benchmark::DoNotOptimize(q.pop());
  }
  state.SetItemsProcessed(state.iterations() * depth);
}
BENCHMARK(BM_EventQueueChurn)->Range(1 << 8, 1 << 14);

void BM_SteadyLowMinute(benchmark::State& state) {
  ScenarioConfig cfg = builtin_scenario("steady-low");
  cfg.rescale_duration(60.0);
  for (auto _ : state) {
    Engine engine(cfg, 1);
    const RunResult r = engine.run();
    benchmark::DoNotOptimize(r.counters.delivered);
  }
}
BENCHMARK(BM_SteadyLowMinute)->Unit(benchmark::kMillisecond);

void BM_SteadyHighMinute(benchmark::State& state) {
  ScenarioConfig cfg = builtin_scenario("steady-high");
  cfg.rescale_duration(60.0);
  for (auto _ : state) {
    Engine engine(cfg, 1);
    const RunResult r = engine.run();
    benchmark::DoNotOptimize(r.counters.delivered);
  }
}
BENCHMARK(BM_SteadyHighMinute)->Unit(benchmark::kMillisecond);

void BM_AdvertisedDelayWalk(benchmark::State& state) {
  ScenarioConfig cfg = builtin_scenario("steady-low");
  cfg.rescale_duration(1.0);
  Engine engine(cfg, 1);
  engine.run();
  RelayId deepest = 0;
  for (const auto& r : engine.topology().relays()) {
    if (r.hops > engine.topology().relay(deepest).hops) deepest = r.id;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.advertised_delay_ms(deepest));
  }
}
BENCHMARK(BM_AdvertisedDelayWalk);

}  // namespace

BENCHMARK_MAIN();
