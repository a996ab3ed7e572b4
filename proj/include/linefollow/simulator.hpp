#pragma once

// Deterministic closed-loop harness: a synthetic top-down camera over a
// coloured path course, the detection pipeline, and a kinematic bicycle.
//
// World frame: x east, y north, metres; heading is counterclockwise from +x.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "linefollow/colorspace.hpp"
#include "linefollow/pipeline.hpp"
#include "linefollow/steering.hpp"

namespace linefollow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct CourseSpec {
  std::vector<Vec2> waypoints;
  double line_width = 0.1;
  /// Tape painted past the final waypoint along the last segment. Rendering
  /// only: progress, cross-track and completion use the waypoints.
  double run_out = 1.5;
  HsvPixel line_color{1.0 / 6.0, 0.9, 0.9};
  HsvPixel floor_color{0.0, 0.05, 0.8};

  void validate() const;
  double total_length() const;
};

struct VehicleState {
  Vec2 position;
  double heading = 0.0;
  double speed = 0.0;
};

/// Orthographic downward camera. The footprint is a footprint_width x
/// footprint_depth rectangle of floor whose near edge lies near_distance
/// ahead of the vehicle reference point. Image column width / 2 looks along
/// the vehicle axis and the bottom row is nearest.
struct CameraModel {
  int width = 640;
  int height = 480;
  double footprint_width = 1.5;
  double footprint_depth = 1.125;
  double near_distance = 0.3;

  void validate() const;
  double metres_per_column() const noexcept { return footprint_width / width; }
  double metres_per_row() const noexcept { return footprint_depth / height; }
};

/// Closest point on the centreline polyline.
struct CourseProjection {
  double distance = 0.0;
  std::size_t segment = 0;
  /// Position along the segment, unclamped (t > 1 on the last segment means
  /// the vehicle has passed the final waypoint).
  double t = 0.0;
  double progress = 0.0;  // arc length of the closest point
};

CourseProjection project_onto_course(const CourseSpec& course, Vec2 position);

RasterImage render_frame(const CourseSpec& course, const VehicleState& state,
                         const CameraModel& cam);

/// Kinematic bicycle step. Positive (rightward) commands turn clockwise;
/// invalid commands steer straight.
VehicleState step_vehicle(const VehicleState& state, const SteeringCommand& cmd, double dt,
                          double wheelbase);

double cross_track_error(const VehicleState& state, const CourseSpec& course);

/// Minimum distance from p to segment ab.
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Wraps into (-pi, pi].
double normalize_angle(double radians);

struct EpisodeConfig {
  CourseSpec course;
  DetectorConfig detector;
  CameraModel camera;
  double wheelbase = 0.3;
  double speed = 6.111;
  double dt = 0.05;
  double max_time = 60.0;
  int lost_frame_limit = 10;
  /// Start pose relative to the first segment: positive offset is to the right.
  double initial_offset = 0.0;
  double initial_heading_offset = 0.0;
  /// Uniform per-channel pixel noise in [-amplitude, amplitude]; 0 disables.
  int noise_amplitude = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Termination { Completed, Timeout, PathLost };

std::string_view to_string(Termination t) noexcept;

struct EpisodeMetrics {
  double distance_traveled = 0.0;
  double elapsed = 0.0;
  double mean_abs_cross_track = 0.0;
  double max_abs_cross_track = 0.0;
  /// 100 * mean |cross-track| / line width.
  double error_pct = 0.0;
  bool completed = false;
  std::size_t frames = 0;
  std::size_t lost_frames = 0;
  Termination termination = Termination::Timeout;
};

struct TickRecord {
  std::size_t index = 0;
  double t = 0.0;
  VehicleState state;
  SteeringCommand command;
  double raw_angle_deg = 0.0;
  double cross_track = 0.0;
  double progress = 0.0;
};

struct EpisodeResult {
  EpisodeMetrics metrics;
  std::vector<TickRecord> trace;
};

/// Called once per tick with the rendered frame and its observation.
using TickObserver =
    std::function<void(const TickRecord&, const RasterImage&, const PathObservation&)>;

VehicleState initial_state(const EpisodeConfig& config);

EpisodeResult run_episode(const EpisodeConfig& config, const TickObserver& observer = {});

}  // namespace linefollow
