#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linefollow {

enum class ErrorCode {
  InvalidParameter,
  InvalidDimensions,
  EmptyInput,
  InsufficientData,
  HueWraparound,
  DegenerateRegion,
  DegenerateContour,
  UndefinedDirection,
  // Portable pixmap decoding.
  UnsupportedFormat,
  MalformedHeader,
  UnsupportedMaxval,
  TruncatedData,
  // Command frames.
  EncodingRange,
  FrameLength,
  FrameStartByte,
  FrameChecksum,
  // Tooling.
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the toolkit carries a machine-readable code so
/// callers (tests, the CLI exit-status mapping) can tell failure modes apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace linefollow
