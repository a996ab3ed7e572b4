#include "linefollow/error.hpp"

namespace linefollow {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "invalid-parameter";
    case ErrorCode::InvalidDimensions: return "invalid-dimensions";
    case ErrorCode::EmptyInput: return "empty-input";
    case ErrorCode::InsufficientData: return "insufficient-data";
    case ErrorCode::HueWraparound: return "hue-wraparound";
    case ErrorCode::DegenerateRegion: return "degenerate-region";
    case ErrorCode::DegenerateContour: return "degenerate-contour";
    case ErrorCode::UndefinedDirection: return "undefined-direction";
    case ErrorCode::UnsupportedFormat: return "unsupported-format";
    case ErrorCode::MalformedHeader: return "malformed-header";
    case ErrorCode::UnsupportedMaxval: return "unsupported-maxval";
    case ErrorCode::TruncatedData: return "truncated-data";
    case ErrorCode::EncodingRange: return "encoding-range";
    case ErrorCode::FrameLength: return "frame-length";
    case ErrorCode::FrameStartByte: return "frame-start-byte";
    case ErrorCode::FrameChecksum: return "frame-checksum";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace linefollow
