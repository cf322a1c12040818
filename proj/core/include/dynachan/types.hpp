#ifndef DYNACHAN_TYPES_HPP
#define DYNACHAN_TYPES_HPP

#include <cstdint>

namespace dynachan {

// Simulation clock: integer microseconds. All protocol quantities are
// millisecond-valued and convert without loss.
using TimeUs = std::int64_t;

constexpr TimeUs us_from_ms(double ms) { return static_cast<TimeUs>(ms * 1000.0 + 0.5); }
constexpr double ms_from_us(TimeUs us) { return static_cast<double>(us) / 1000.0; }
constexpr TimeUs us_from_s(double s) { return static_cast<TimeUs>(s * 1e6 + 0.5); }

using NodeId = std::int32_t;      // source node index within a scenario
using RelayId = std::int32_t;     // backbone relay index within a scenario
using ChannelId = std::int32_t;   // 802.15.4 channel number, 11..26

constexpr ChannelId kFirstChannel = 11;
constexpr ChannelId kLastChannel = 26;
constexpr RelayId kGateway = -1;  // parent sentinel for gateway-adjacent relays

constexpr bool is_valid_channel(ChannelId c) { return c >= kFirstChannel && c <= kLastChannel; }

}  // namespace dynachan

#endif  // DYNACHAN_TYPES_HPP
