#pragma once

// Six-byte steering command frame:
//
//   [0] 0xAA start byte
//   [1] sequence counter
//   [2] angle, signed 16-bit centidegrees, low byte
//   [3] angle, high byte
//   [4] flags, bit 0 = valid
//   [5] XOR of bytes 0..4
//
// The XOR checksum catches every single-bit error. Two flipped bits in the
// same column of different bytes cancel out and go unnoticed.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "linefollow/steering.hpp"

namespace linefollow {

inline constexpr std::uint8_t kFrameStart = 0xAA;
inline constexpr std::size_t kFrameSize = 6;
inline constexpr std::uint8_t kFlagValid = 0x01;

using CommandFrame = std::array<std::uint8_t, kFrameSize>;

struct FrameFields {
  std::uint8_t sequence = 0;
  std::int16_t centidegrees = 0;
  std::uint8_t flags = 0;

  friend bool operator==(const FrameFields&, const FrameFields&) = default;
};

std::uint8_t frame_checksum(std::span<const std::uint8_t> bytes) noexcept;

CommandFrame pack_fields(const FrameFields& fields) noexcept;

/// Validates length, start byte and checksum, in that order.
FrameFields unpack_fields(std::span<const std::uint8_t> bytes);

/// Angle rounded to the nearest centidegree; invalid commands send angle 0.
CommandFrame encode_frame(const SteeringCommand& cmd, std::uint8_t sequence);

std::pair<SteeringCommand, std::uint8_t> decode_frame(std::span<const std::uint8_t> bytes);

/// "AA 00 00 00 01 AB"
std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace linefollow
