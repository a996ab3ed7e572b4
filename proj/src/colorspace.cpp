#include "linefollow/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "linefollow/error.hpp"

namespace linefollow {

namespace {

bool unit_interval(double lo, double hi) {
  return lo >= 0.0 && hi <= 1.0 && lo <= hi;
}

int bin_of(double value, int bins) {
  const int bin = static_cast<int>(std::floor(value * bins));
  return std::clamp(bin, 0, bins - 1);
}

}  // namespace

void HsvRange::validate() const {
  if (!unit_interval(h_lo, h_hi) || !unit_interval(s_lo, s_hi) || !unit_interval(v_lo, v_hi)) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("invalid HSV range h[{}, {}] s[{}, {}] v[{}, {}]", h_lo, h_hi, s_lo,
                            s_hi, v_lo, v_hi));
  }
}

HsvHistogram::HsvHistogram(int bins) : bins_(bins) {
  if (bins < 2) throw Error(ErrorCode::InvalidParameter, "histogram needs at least 2 bins");
  for (auto& c : counts_) c.assign(static_cast<std::size_t>(bins), 0);
}

void HsvHistogram::add(const HsvPixel& p) {
  ++counts_[0][static_cast<std::size_t>(bin_of(p.h, bins_))];
  ++counts_[1][static_cast<std::size_t>(bin_of(p.s, bins_))];
  ++counts_[2][static_cast<std::size_t>(bin_of(p.v, bins_))];
  ++total_;
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidDimensions, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

HsvPixel rgb_to_hsv(Rgb rgb) noexcept {
  const int r = rgb.r;
  const int g = rgb.g;
  const int b = rgb.b;
  const int hi = std::max({r, g, b});
  const int lo = std::min({r, g, b});
  const int delta = hi - lo;

  HsvPixel out;
  out.v = hi / 255.0;
  out.s = hi > 0 ? static_cast<double>(delta) / hi : 0.0;
  if (delta == 0) return out;  // achromatic: hue is canonically 0

  double sector = 0.0;
  if (hi == r) {
    sector = static_cast<double>(g - b) / delta;
    if (sector < 0.0) sector += 6.0;
  } else if (hi == g) {
    sector = static_cast<double>(b - r) / delta + 2.0;
  } else {
    sector = static_cast<double>(r - g) / delta + 4.0;
  }
  out.h = sector / 6.0;
  if (out.h >= 1.0) out.h -= 1.0;
  return out;
}

Rgb hsv_to_rgb(const HsvPixel& p) {
  if (!(p.h >= 0.0 && p.h < 1.0) || !(p.s >= 0.0 && p.s <= 1.0) ||
      !(p.v >= 0.0 && p.v <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("HSV pixel out of range ({}, {}, {})", p.h, p.s, p.v));
  }
  double h6 = p.h * 6.0;
  if (h6 >= 6.0) h6 = 0.0;
  const int sector = static_cast<int>(std::floor(h6));
  const double f = h6 - sector;
  const double v = p.v;
  const double m = v * (1.0 - p.s);
  const double q = v * (1.0 - p.s * f);
  const double t = v * (1.0 - p.s * (1.0 - f));

  double r = v, g = v, b = v;
  switch (sector) {
    case 0: r = v; g = t; b = m; break;
    case 1: r = q; g = v; b = m; break;
    case 2: r = m; g = v; b = t; break;
    case 3: r = m; g = q; b = v; break;
    case 4: r = t; g = m; b = v; break;
    default: r = v; g = m; b = q; break;
  }
  return Rgb{quantize_unit(r), quantize_unit(g), quantize_unit(b)};
}

HsvHistogram hsv_histogram(std::span<const HsvPixel> pixels, int bins) {
  HsvHistogram hist(bins);
  if (pixels.empty()) throw Error(ErrorCode::EmptyInput, "histogram of an empty pixel list");
  for (const HsvPixel& p : pixels) hist.add(p);
  return hist;
}

ChannelStats fit_channel_stats(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("need at least 2 samples, got {}", samples.size()));
  }
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return ChannelStats{mean, std::sqrt(ss / n), samples.size()};
}

HsvRange derive_range(const ChannelStats& h, const ChannelStats& s, const ChannelStats& v,
                      double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidParameter, "bound multiplier k must be positive");
  }
  HsvRange range;
  range.h_lo = h.mean - k * h.stddev;
  range.h_hi = h.mean + k * h.stddev;
  if (range.h_lo < 0.0 || range.h_hi > 1.0) {
    throw Error(ErrorCode::HueWraparound,
                fmt::format("hue interval [{:.4f}, {:.4f}] crosses the 0/1 seam; wrapped hue "
                            "ranges are not supported",
                            range.h_lo, range.h_hi));
  }
  range.s_lo = std::clamp(s.mean - k * s.stddev, 0.0, 1.0);
  range.s_hi = std::clamp(s.mean + k * s.stddev, 0.0, 1.0);
  range.v_lo = std::clamp(v.mean - k * v.stddev, 0.0, 1.0);
  range.v_hi = std::clamp(v.mean + k * v.stddev, 0.0, 1.0);
  range.validate();
  return range;
}

BinaryMask classify_pixels(const RasterImage& image, const HsvRange& range) {
  range.validate();
  BinaryMask mask(image.width(), image.height());
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (range.contains(rgb_to_hsv(image.at(x, y)))) mask.set(x, y, true);
    }
  }
  return mask;
}

BinaryMask threshold_mask(const RasterImage& image, const HsvRange& range, double sigma) {
  range.validate();
  return classify_pixels(smooth_rgb(image, sigma), range);
}

}  // namespace linefollow
