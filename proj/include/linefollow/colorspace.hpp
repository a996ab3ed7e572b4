#pragma once

// HSV conversion, calibration statistics and path-colour masks.
//
// All three HSV channels are unit-scaled: hue is a fraction of a full turn in
// [0, 1), saturation and value lie in [0, 1].

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "linefollow/imaging.hpp"

namespace linefollow {

struct HsvPixel {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;
};

/// Inclusive per-channel acceptance intervals. Hue intervals never wrap.
struct HsvRange {
  double h_lo = 0.0, h_hi = 1.0;
  double s_lo = 0.0, s_hi = 1.0;
  double v_lo = 0.0, v_hi = 1.0;

  /// Throws InvalidParameter unless every lo <= hi and bounds lie in [0, 1].
  void validate() const;

  bool contains(const HsvPixel& p) const noexcept {
    return p.h >= h_lo && p.h <= h_hi && p.s >= s_lo && p.s <= s_hi && p.v >= v_lo &&
           p.v <= v_hi;
  }

  friend bool operator==(const HsvRange&, const HsvRange&) = default;
};

/// Yellow tape: H in (0.11, 0.22), S and V in (0.4, 1.0).
inline constexpr HsvRange kYellowPathRange{0.11, 0.22, 0.4, 1.0, 0.4, 1.0};

struct ChannelStats {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;
};

enum class HsvChannel : std::size_t { Hue = 0, Saturation = 1, Value = 2 };

class HsvHistogram {
 public:
  explicit HsvHistogram(int bins);

  int bins() const noexcept { return bins_; }
  std::span<const std::size_t> counts(HsvChannel channel) const {
    return counts_[static_cast<std::size_t>(channel)];
  }
  std::size_t total() const noexcept { return total_; }

  /// Lower edge of bin i; bin_edge(bins()) is the upper edge of the last bin.
  double bin_edge(int i) const noexcept { return static_cast<double>(i) / bins_; }

  void add(const HsvPixel& p);

 private:
  int bins_;
  std::size_t total_ = 0;
  std::array<std::vector<std::size_t>, 3> counts_;
};

/// Row-major boolean grid, true marks a path-coloured pixel.
class BinaryMask {
 public:
  BinaryMask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int x, int y) const { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { bits_[index(x, y)] = value ? 1 : 0; }

  /// Out-of-frame coordinates read as background.
  bool get_or_false(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && bits_[index(x, y)] != 0;
  }

  std::size_t count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

HsvPixel rgb_to_hsv(Rgb rgb) noexcept;
inline HsvPixel rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  return rgb_to_hsv(Rgb{r, g, b});
}

/// Inverse hexcone conversion, channels rounded half away from zero.
Rgb hsv_to_rgb(const HsvPixel& p);

HsvHistogram hsv_histogram(std::span<const HsvPixel> pixels, int bins);

/// Arithmetic mean and population standard deviation.
ChannelStats fit_channel_stats(std::span<const double> samples);

/// [mean - k std, mean + k std] per channel. Saturation and value are clipped
/// to [0, 1]; a hue interval leaving [0, 1] would wrap and is rejected.
HsvRange derive_range(const ChannelStats& h, const ChannelStats& s, const ChannelStats& v,
                      double k = 2.0);

/// Smooths the frame, converts to HSV and keeps pixels inside range.
BinaryMask threshold_mask(const RasterImage& image, const HsvRange& range, double sigma = 1.0);

/// Classification without the smoothing stage.
BinaryMask classify_pixels(const RasterImage& image, const HsvRange& range);

}  // namespace linefollow
