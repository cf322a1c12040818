#include "dynachan/wire.hpp"

#include <cmath>

namespace dynachan::wire {

namespace {

void put_u16(std::uint8_t* out, std::uint16_t v) {
  out[0] = static_cast<std::uint8_t>(v & 0xff);
  out[1] = static_cast<std::uint8_t>((v >> 8) & 0xff);
}

void put_u32(std::uint8_t* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<std::uint8_t>((v >> (8 * i)) & 0xff);
}

std::uint16_t get_u16(const std::uint8_t* in) {
  return static_cast<std::uint16_t>(in[0] | (in[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[i]) << (8 * i);
  return v;
}

}  // namespace

std::uint32_t encode_delay_ms(double ms) {
  if (ms <= 0.0) return 0;
  const double scaled = std::round(ms * 65536.0);
  if (scaled >= 4294967295.0) return 0xffffffffu;
  return static_cast<std::uint32_t>(scaled);
}

double decode_delay_ms(std::uint32_t q16_16) {
  return static_cast<double>(q16_16) / 65536.0;
}

std::array<std::uint8_t, kProbeSize> encode(const Probe& p) {
  std::array<std::uint8_t, kProbeSize> out{};
  out[0] = kProbeType;
  put_u16(out.data() + 1, p.src);
  return out;
}

std::array<std::uint8_t, kReplySize> encode(const Reply& r) {
  std::array<std::uint8_t, kReplySize> out{};
  out[0] = kReplyType;
  put_u16(out.data() + 1, r.relay);
  put_u32(out.data() + 3, r.delay_q16_16_ms);
  return out;
}

std::optional<Probe> decode_probe(const std::uint8_t* data, std::size_t len) {
  if (len != kProbeSize || data[0] != kProbeType) return std::nullopt;
  return Probe{get_u16(data + 1)};
}

std::optional<Reply> decode_reply(const std::uint8_t* data, std::size_t len) {
  if (len != kReplySize || data[0] != kReplyType) return std::nullopt;
  return Reply{get_u16(data + 1), get_u32(data + 3)};
}

}  // namespace dynachan::wire
