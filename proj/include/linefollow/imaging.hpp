#pragma once

// Raster images, Gaussian kernels and convolution-based smoothing.
//
// Coordinates: origin at the top-left pixel, x grows rightward (column),
// y grows downward (row). Every module in the toolkit uses this convention.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace linefollow {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB frame stored row-major.
class RasterImage {
 public:
  RasterImage(int width, int height, Rgb fill = {});
  RasterImage(int width, int height, std::vector<Rgb> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  const Rgb& at(int x, int y) const { return pixels_[index(x, y)]; }
  Rgb& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  std::span<Rgb> pixels() noexcept { return pixels_; }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<Rgb> pixels_;
};

/// Single-channel image with intensities in [0, 1].
class GrayImage {
 public:
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }
  double& at(int x, int y) { return values_[index(x, y)]; }

  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<double> values_;
};

/// Normalized square convolution kernel of side 2*radius + 1.
///
/// Kernels built by gaussian_kernel() also keep their 1-D factor so that
/// smoothing can run as two separable passes.
class Kernel {
 public:
  Kernel(int radius, double sigma, std::vector<double> weights,
         std::vector<double> axis_factor = {});

  int radius() const noexcept { return radius_; }
  int side() const noexcept { return 2 * radius_ + 1; }
  double sigma() const noexcept { return sigma_; }

  /// Weight at offset (dx, dy), both in [-radius, radius].
  double weight(int dx, int dy) const {
    return weights_[static_cast<std::size_t>((dy + radius_) * side() + dx + radius_)];
  }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> axis_factor() const noexcept { return axis_factor_; }
  bool separable() const noexcept { return !axis_factor_.empty(); }

 private:
  int radius_;
  double sigma_;
  std::vector<double> weights_;
  std::vector<double> axis_factor_;
};

/// Isotropic Gaussian exp(-(dx^2 + dy^2) / (2 sigma^2)), normalized to sum 1.
Kernel gaussian_kernel(double sigma, int radius);

/// Support radius used by smooth_rgb: ceil(3 sigma).
int gaussian_radius(double sigma);

/// Direct 2-D convolution with edge replication; output clamped to [0, 1].
GrayImage convolve(const GrayImage& image, const Kernel& kernel);

/// Same result as convolve() for separable kernels, computed in two 1-D passes.
GrayImage convolve_separable(const GrayImage& image, const Kernel& kernel);

/// Per-channel Gaussian smoothing with radius ceil(3 sigma), re-quantized to
/// 8 bits with round-half-away-from-zero.
RasterImage smooth_rgb(const RasterImage& image, double sigma);

enum class Channel { Red, Green, Blue };

GrayImage extract_channel(const RasterImage& image, Channel channel);

/// Rounds half away from zero and clamps into [0, 255].
std::uint8_t quantize_unit(double value);

}  // namespace linefollow
