#include "linefollow/steering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "linefollow/error.hpp"

namespace linefollow {

ReferenceFrame ReferenceFrame::bottom_center(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidDimensions, "reference frame needs a non-empty image");
  }
  return ReferenceFrame{PixelPoint{width / 2.0, static_cast<double>(height - 1)}};
}

void SteeringLimits::validate() const {
  if (!(min_deg < max_deg) || !(raw_min_deg < raw_max_deg)) {
    throw Error(ErrorCode::InvalidParameter,
                fmt::format("steering limits need min < max (got [{}, {}] from raw [{}, {}])",
                            min_deg, max_deg, raw_min_deg, raw_max_deg));
  }
}

double path_angle(const Centroid& c, const ReferenceFrame& frame) {
  const double dx = c.x - frame.anchor.x;
  const double dy = frame.anchor.y - c.y;
  if (dx == 0.0 && dy == 0.0) {
    throw Error(ErrorCode::UndefinedDirection, "centroid coincides with the anchor");
  }
  return std::atan2(dx, dy);
}

double rad_to_deg(double radians) noexcept { return radians * 180.0 / std::numbers::pi; }

double deg_to_rad(double degrees) noexcept { return degrees * std::numbers::pi / 180.0; }

double transform_range(double x, double a, double b, double c, double d) {
  if (!(a < b)) throw Error(ErrorCode::InvalidParameter, "transform_range needs a < b");
  if (!(c <= d)) throw Error(ErrorCode::InvalidParameter, "transform_range needs c <= d");
  if (x <= a) return c;
  if (x >= b) return d;
  return (x - a) * (d - c) / (b - a) + c;
}

SteeringCommand steering_command(const std::optional<Centroid>& c, const ReferenceFrame& frame,
                                 const SteeringLimits& limits) {
  limits.validate();
  if (!c) return SteeringCommand{0.0, false};
  const double raw = rad_to_deg(path_angle(*c, frame));
  double angle = transform_range(raw, limits.raw_min_deg, limits.raw_max_deg, limits.min_deg,
                                 limits.max_deg);
  // Rounding in the affine map can land one ulp outside the limits.
  angle = std::clamp(angle, limits.min_deg, limits.max_deg);
  return SteeringCommand{angle, true};
}

Region classify_region(const Centroid& c, int image_width) {
  if (image_width < 1) throw Error(ErrorCode::InvalidParameter, "image width must be positive");
  const double third = image_width / 3.0;
  if (c.x < third) return Region::Left;
  if (c.x < 2.0 * third) return Region::Center;
  return Region::Right;
}

}  // namespace linefollow
