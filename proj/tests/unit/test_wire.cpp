#include <doctest.h>

#include <cmath>

#include "dynachan/rng.hpp"
#include "dynachan/wire.hpp"

using namespace dynachan;

TEST_CASE("probe layout is fixed") {
  const auto bytes = wire::encode(wire::Probe{0x1234});
  CHECK(bytes[0] == 1);
  CHECK(bytes[1] == 0x34);
  CHECK(bytes[2] == 0x12);

  const auto decoded = wire::decode_probe(bytes.data(), bytes.size());
  REQUIRE(decoded.has_value());
  CHECK(decoded->src == 0x1234);
}

TEST_CASE("reply layout is fixed") {
  // 40 ms = 0x00280000 in 16.16.
  const auto bytes = wire::encode(wire::Reply{7, 0x00280000u});
  CHECK(bytes[0] == 2);
  CHECK(bytes[1] == 7);
  CHECK(bytes[2] == 0);
  CHECK(bytes[3] == 0x00);
  CHECK(bytes[4] == 0x00);
  CHECK(bytes[5] == 0x28);
  CHECK(bytes[6] == 0x00);

  const auto decoded = wire::decode_reply(bytes.data(), bytes.size());
  REQUIRE(decoded.has_value());
  CHECK(decoded->relay == 7);
  CHECK(wire::decode_delay_ms(decoded->delay_q16_16_ms) == doctest::Approx(40.0));
}

TEST_CASE("malformed frames decode to nothing") {
  const auto probe = wire::encode(wire::Probe{1});
  CHECK(!wire::decode_reply(probe.data(), probe.size()).has_value());
  CHECK(!wire::decode_probe(probe.data(), probe.size() - 1).has_value());
  std::uint8_t junk[3] = {9, 9, 9};
  CHECK(!wire::decode_probe(junk, 3).has_value());
}

TEST_CASE("fixed-point round trip stays within half a step") {
  Rng rng(8);
  for (int i = 0; i < 2000; ++i) {
    const double ms = rng.uniform(0.0, 60000.0);
    const double back = wire::decode_delay_ms(wire::encode_delay_ms(ms));
    CHECK(std::abs(back - ms) <= 0.5 / 65536.0 + 1e-12);
  }
  CHECK(wire::decode_delay_ms(wire::encode_delay_ms(0.0)) == 0.0);
  // Saturates instead of wrapping.
  CHECK(wire::encode_delay_ms(1e12) == 0xffffffffu);
}
