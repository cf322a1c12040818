#ifndef DYNACHAN_WIRE_HPP
#define DYNACHAN_WIRE_HPP

#include <array>
#include <cstdint>
#include <optional>

namespace dynachan::wire {

// Simulated over-the-air layouts, fixed for trace readability.
// All multi-byte fields are little-endian. Delay values travel as 16.16
// fixed-point milliseconds.

constexpr std::uint8_t kProbeType = 1;
constexpr std::uint8_t kReplyType = 2;

struct Probe {
  std::uint16_t src = 0;
};

struct Reply {
  std::uint16_t relay = 0;
  std::uint32_t delay_q16_16_ms = 0;
};

constexpr std::size_t kProbeSize = 3;
constexpr std::size_t kReplySize = 7;

std::uint32_t encode_delay_ms(double ms);
double decode_delay_ms(std::uint32_t q16_16);

std::array<std::uint8_t, kProbeSize> encode(const Probe& p);
std::array<std::uint8_t, kReplySize> encode(const Reply& r);

std::optional<Probe> decode_probe(const std::uint8_t* data, std::size_t len);
std::optional<Reply> decode_reply(const std::uint8_t* data, std::size_t len);

}  // namespace dynachan::wire

#endif  // DYNACHAN_WIRE_HPP
