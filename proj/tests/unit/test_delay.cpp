#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "dynachan/delay.hpp"
#include "dynachan/rng.hpp"

using namespace dynachan;

TEST_CASE("first sample initializes the estimator") {
  DelayEwma e;
  e = ewma_update(e, 10.0);
  CHECK(e.initialized);
  CHECK(e.value_ms == doctest::Approx(10.0));
}

TEST_CASE("half weight update") {
  DelayEwma e;
  e = ewma_update(e, 10.0);
  e = ewma_update(e, 20.0);
  CHECK(e.value_ms == doctest::Approx(15.0));
}

TEST_CASE("constant input is a fixed point") {
  DelayEwma e;
  for (int i = 0; i < 3; ++i) e = ewma_update(e, 7.0);
  CHECK(e.value_ms == doctest::Approx(7.0));
}

TEST_CASE("negative samples are rejected") {
  DelayEwma e;
  CHECK_THROWS_AS(ewma_update(e, -1.0), std::invalid_argument);
}

TEST_CASE("value stays within the observed sample range") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const double alpha = trial % 2 == 0 ? 0.5 : rng.uniform(0.05, 1.0);
    DelayEwma e;
    e.alpha = alpha;
    double lo = 1e300;
    double hi = -1e300;
    const int steps = 1 + static_cast<int>(rng.below(64));
    for (int i = 0; i < steps; ++i) {
      const double sample = rng.uniform(0.0, 500.0);
      lo = std::min(lo, sample);
      hi = std::max(hi, sample);
      e = ewma_update(e, sample);
      CHECK(e.value_ms >= lo - 1e-9);
      CHECK(e.value_ms <= hi + 1e-9);
    }
  }
}

TEST_CASE("constant stream converges to the constant") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = rng.uniform(0.0, 300.0);
    DelayEwma e;
    e = ewma_update(e, rng.uniform(0.0, 300.0));
    for (int i = 0; i < 64; ++i) e = ewma_update(e, c);
    CHECK(e.value_ms == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("path aggregation is a sum") {
  DelayEwma idle;  // uninitialized: contributes zero
  CHECK(path_delay_aggregate(idle, PathDelay{0.0}).total_ms == doctest::Approx(0.0));

  DelayEwma local = ewma_update(DelayEwma{}, 5.0);
  CHECK(path_delay_aggregate(local, PathDelay{12.0}).total_ms == doctest::Approx(17.0));
}

TEST_CASE("three-relay chain matches a brute-force walk") {
  // Relays with settled estimates 3, 4, 5 ms, child to root.
  std::vector<DelayEwma> chain;
  for (double v : {3.0, 4.0, 5.0}) chain.push_back(ewma_update(DelayEwma{}, v));

  // Propagation: each relay advertises local + parent total.
  PathDelay advertised{0.0};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    advertised = path_delay_aggregate(*it, advertised);
  }

  // Independent oracle: walk the same chain and add raw values.
  double oracle = 0.0;
  for (const auto& e : chain) oracle += e.value_ms;

  CHECK(advertised.total_ms == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(advertised.total_ms == doctest::Approx(12.0));
}
