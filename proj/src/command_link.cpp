#include "linefollow/command_link.hpp"

#include <cmath>

#include <fmt/format.h>

#include "linefollow/error.hpp"

namespace linefollow {

std::uint8_t frame_checksum(std::span<const std::uint8_t> bytes) noexcept {
  std::uint8_t x = 0;
  for (std::uint8_t b : bytes) x ^= b;
  return x;
}

CommandFrame pack_fields(const FrameFields& fields) noexcept {
  const auto raw = static_cast<std::uint16_t>(fields.centidegrees);
  CommandFrame frame{kFrameStart,
                     fields.sequence,
                     static_cast<std::uint8_t>(raw & 0xFF),
                     static_cast<std::uint8_t>(raw >> 8),
                     fields.flags,
                     0};
  frame[5] = frame_checksum(std::span(frame).first(5));
  return frame;
}

FrameFields unpack_fields(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kFrameSize) {
    throw Error(ErrorCode::FrameLength,
                fmt::format("command frame must be {} bytes, got {}", kFrameSize, bytes.size()));
  }
  if (bytes[0] != kFrameStart) {
    throw Error(ErrorCode::FrameStartByte, fmt::format("bad start byte {:02X}", bytes[0]));
  }
  const std::uint8_t expected = frame_checksum(bytes.first(5));
  if (bytes[5] != expected) {
    throw Error(ErrorCode::FrameChecksum,
                fmt::format("checksum mismatch: frame {:02X}, computed {:02X}", bytes[5], expected));
  }
  const auto raw = static_cast<std::uint16_t>(bytes[2] | (bytes[3] << 8));
  return FrameFields{bytes[1], static_cast<std::int16_t>(raw), bytes[4]};
}

CommandFrame encode_frame(const SteeringCommand& cmd, std::uint8_t sequence) {
  FrameFields fields;
  fields.sequence = sequence;
  if (cmd.valid) {
    const double centi = std::round(cmd.angle_deg * 100.0);
    if (!std::isfinite(centi) || centi < -32767.0 || centi > 32767.0) {
      throw Error(ErrorCode::EncodingRange,
                  fmt::format("angle {} deg does not fit in 16-bit centidegrees", cmd.angle_deg));
    }
    fields.centidegrees = static_cast<std::int16_t>(centi);
    fields.flags = kFlagValid;
  }
  return pack_fields(fields);
}

std::pair<SteeringCommand, std::uint8_t> decode_frame(std::span<const std::uint8_t> bytes) {
  const FrameFields fields = unpack_fields(bytes);
  SteeringCommand cmd;
  cmd.valid = (fields.flags & kFlagValid) != 0;
  cmd.angle_deg = fields.centidegrees / 100.0;
  return {cmd, fields.sequence};
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt::format("{:02X}", bytes[i]);
  }
  return out;
}

}  // namespace linefollow
