#include "linefollow/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linefollow/error.hpp"

namespace linefollow {

namespace {

void check_dimensions(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidDimensions,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

int clamp_index(int i, int size) { return std::clamp(i, 0, size - 1); }

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill)
    : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.assign(area(width, height), fill);
}

RasterImage::RasterImage(int width, int height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  if (pixels_.size() != area(width, height)) {
    throw Error(ErrorCode::InvalidDimensions, "pixel count does not match width x height");
  }
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dimensions(width, height);
  if (!(fill >= 0.0 && fill <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "gray intensity outside [0, 1]");
  }
  values_.assign(area(width, height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dimensions(width, height);
  if (values_.size() != area(width, height)) {
    throw Error(ErrorCode::InvalidDimensions, "value count does not match width x height");
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::InvalidParameter, "gray intensity outside [0, 1]");
    }
  }
}

Kernel::Kernel(int radius, double sigma, std::vector<double> weights,
               std::vector<double> axis_factor)
    : radius_(radius),
      sigma_(sigma),
      weights_(std::move(weights)),
      axis_factor_(std::move(axis_factor)) {
  if (radius_ < 1) throw Error(ErrorCode::InvalidParameter, "kernel radius must be >= 1");
  const auto side_len = static_cast<std::size_t>(side());
  if (weights_.size() != side_len * side_len) {
    throw Error(ErrorCode::InvalidParameter, "kernel weight count does not match radius");
  }
  if (!axis_factor_.empty() && axis_factor_.size() != side_len) {
    throw Error(ErrorCode::InvalidParameter, "kernel axis factor does not match radius");
  }
}

int gaussian_radius(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidParameter, "sigma must be a positive finite number");
  }
  return std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
}

Kernel gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidParameter, "sigma must be a positive finite number");
  }
  if (radius < 1) throw Error(ErrorCode::InvalidParameter, "kernel radius must be >= 1");

  const int side = 2 * radius + 1;
  const double denom = 2.0 * sigma * sigma;

  // exp(-(dx^2+dy^2)/2s^2) = exp(-dx^2/2s^2) * exp(-dy^2/2s^2), and the
  // normalization factors the same way.
  std::vector<double> axis(static_cast<std::size_t>(side));
  double axis_sum = 0.0;
  for (int d = -radius; d <= radius; ++d) {
    const double w = std::exp(-static_cast<double>(d * d) / denom);
    axis[static_cast<std::size_t>(d + radius)] = w;
    axis_sum += w;
  }
  for (double& w : axis) w /= axis_sum;

  std::vector<double> weights(static_cast<std::size_t>(side * side));
  double sum = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      const double w = std::exp(-static_cast<double>(dx * dx + dy * dy) / denom);
      weights[static_cast<std::size_t>((dy + radius) * side + dx + radius)] = w;
      sum += w;
    }
  }
  for (double& w : weights) w /= sum;

  return Kernel(radius, sigma, std::move(weights), std::move(axis));
}

GrayImage convolve(const GrayImage& image, const Kernel& kernel) {
  const int w = image.width();
  const int h = image.height();
  const int r = kernel.radius();
  std::vector<double> out(area(w, h));

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        const int sy = clamp_index(y + dy, h);
        for (int dx = -r; dx <= r; ++dx) {
          acc += kernel.weight(dx, dy) * image.at(clamp_index(x + dx, w), sy);
        }
      }
      out[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
          static_cast<std::size_t>(x)] = std::clamp(acc, 0.0, 1.0);
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage convolve_separable(const GrayImage& image, const Kernel& kernel) {
  if (!kernel.separable()) return convolve(image, kernel);

  const int w = image.width();
  const int h = image.height();
  const int r = kernel.radius();
  const auto axis = kernel.axis_factor();
  const auto src = image.values();
  const auto stride = static_cast<std::size_t>(w);

  std::vector<double> tmp(area(w, h));
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * stride;
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -r; d <= r; ++d) {
        acc += axis[static_cast<std::size_t>(d + r)] *
               src[row + static_cast<std::size_t>(clamp_index(x + d, w))];
      }
      tmp[row + static_cast<std::size_t>(x)] = acc;
    }
  }

  std::vector<double> out(area(w, h));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int d = -r; d <= r; ++d) {
        acc += axis[static_cast<std::size_t>(d + r)] *
               tmp[static_cast<std::size_t>(clamp_index(y + d, h)) * stride +
                   static_cast<std::size_t>(x)];
      }
      out[static_cast<std::size_t>(y) * stride + static_cast<std::size_t>(x)] =
          std::clamp(acc, 0.0, 1.0);
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage extract_channel(const RasterImage& image, Channel channel) {
  std::vector<double> values;
  values.reserve(image.pixels().size());
  for (const Rgb& p : image.pixels()) {
    std::uint8_t c = 0;
    switch (channel) {
      case Channel::Red: c = p.r; break;
      case Channel::Green: c = p.g; break;
      case Channel::Blue: c = p.b; break;
    }
    values.push_back(static_cast<double>(c) / 255.0);
  }
  return GrayImage(image.width(), image.height(), std::move(values));
}

std::uint8_t quantize_unit(double value) {
  // std::round rounds halfway cases away from zero.
  return static_cast<std::uint8_t>(std::clamp(std::round(value * 255.0), 0.0, 255.0));
}

RasterImage smooth_rgb(const RasterImage& image, double sigma) {
  const Kernel kernel = gaussian_kernel(sigma, gaussian_radius(sigma));
  const GrayImage red = convolve_separable(extract_channel(image, Channel::Red), kernel);
  const GrayImage green = convolve_separable(extract_channel(image, Channel::Green), kernel);
  const GrayImage blue = convolve_separable(extract_channel(image, Channel::Blue), kernel);

  std::vector<Rgb> pixels(image.pixels().size());
  const auto rv = red.values();
  const auto gv = green.values();
  const auto bv = blue.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = Rgb{quantize_unit(rv[i]), quantize_unit(gv[i]), quantize_unit(bv[i])};
  }
  return RasterImage(image.width(), image.height(), std::move(pixels));
}

}  // namespace linefollow
