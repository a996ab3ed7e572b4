#pragma once

// Steering angle from a path centroid: two-argument arctangent against the
// straight-ahead reference vector, converted to degrees and mapped onto the
// vehicle's rotation limits.

#include <optional>

#include "linefollow/contour.hpp"

namespace linefollow {

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

/// The reference vector starts at anchor and points straight up the image.
struct ReferenceFrame {
  PixelPoint anchor;

  /// Bottom-centre anchor (width / 2, height - 1).
  static ReferenceFrame bottom_center(int width, int height);
};

struct SteeringLimits {
  double min_deg = -30.0;
  double max_deg = 30.0;
  double raw_min_deg = -90.0;
  double raw_max_deg = 90.0;

  void validate() const;
};

/// Positive angles steer right. Invalid commands carry angle 0.
struct SteeringCommand {
  double angle_deg = 0.0;
  bool valid = false;

  friend bool operator==(const SteeringCommand&, const SteeringCommand&) = default;
};

/// Angle in (-pi, pi] between the reference vector and anchor->centroid:
/// zero straight ahead, positive when the centroid lies right of the anchor.
double path_angle(const Centroid& c, const ReferenceFrame& frame);

double rad_to_deg(double radians) noexcept;
double deg_to_rad(double degrees) noexcept;

/// Affine map of [a, b] onto [c, d]; x is clamped into [a, b] first.
double transform_range(double x, double a, double b, double c, double d);

SteeringCommand steering_command(const std::optional<Centroid>& c, const ReferenceFrame& frame,
                                 const SteeringLimits& limits);

enum class Region { Left, Center, Right };

/// Thirds of the image width. Kept only as the fixed-angle baseline.
Region classify_region(const Centroid& c, int image_width);

}  // namespace linefollow
