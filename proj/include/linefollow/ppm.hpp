#pragma once

// Binary portable pixmap (P6, maxval 255) codec.

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "linefollow/imaging.hpp"

namespace linefollow {

/// Emits "P6\n<w> <h>\n255\n" followed by the raw RGB triples.
std::vector<std::uint8_t> encode_ppm(const RasterImage& image);

/// Accepts any syntactically valid P6 header (arbitrary whitespace and
/// '#' comments between tokens) with maxval 255.
RasterImage decode_ppm(std::span<const std::uint8_t> bytes);

RasterImage read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RasterImage& image);

}  // namespace linefollow
