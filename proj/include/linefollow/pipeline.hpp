#pragma once

// Per-frame detection: smooth -> HSV threshold -> border following ->
// largest contour -> centroid -> steering command.

#include <optional>

#include "linefollow/colorspace.hpp"
#include "linefollow/contour.hpp"
#include "linefollow/imaging.hpp"
#include "linefollow/steering.hpp"

namespace linefollow {

struct DetectorConfig {
  HsvRange range = kYellowPathRange;
  double sigma = 1.0;
  double min_area = 50.0;
  SteeringLimits limits;
};

struct PathObservation {
  std::optional<Contour> contour;
  std::optional<Centroid> centroid;
  double area = 0.0;
  double raw_angle_deg = 0.0;
  SteeringCommand command;

  bool detected() const noexcept { return centroid.has_value(); }
};

PathObservation detect_path(const RasterImage& frame, const DetectorConfig& config);

/// Variant that also hands back the mask the observation was derived from.
PathObservation detect_path(const RasterImage& frame, const DetectorConfig& config,
                            BinaryMask& mask_out);

}  // namespace linefollow
