#include "linefollow/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "linefollow/error.hpp"

namespace linefollow {

namespace {

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

double segment_distance_sq(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 d = p - (a + t * ab);
  return dot(d, d);
}

struct CameraAxes {
  Vec2 forward;
  Vec2 right;
};

CameraAxes axes_for(double heading) {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return CameraAxes{Vec2{c, s}, Vec2{s, -c}};
}

}  // namespace

void CourseSpec::validate() const {
  if (waypoints.size() < 2) throw Error(ErrorCode::InvalidParameter, "course needs >= 2 waypoints");
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (waypoints[i] == waypoints[i - 1]) {
      throw Error(ErrorCode::InvalidParameter,
                  fmt::format("course waypoints {} and {} coincide", i - 1, i));
    }
  }
  if (!(line_width > 0.0)) throw Error(ErrorCode::InvalidParameter, "line_width must be > 0");
  if (!(run_out >= 0.0)) throw Error(ErrorCode::InvalidParameter, "run_out must be >= 0");
  // hsv_to_rgb range-checks the colours.
  (void)hsv_to_rgb(line_color);
  (void)hsv_to_rgb(floor_color);
}

double CourseSpec::total_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += std::hypot(waypoints[i].x - waypoints[i - 1].x, waypoints[i].y - waypoints[i - 1].y);
  }
  return total;
}

void CameraModel::validate() const {
  if (width < 1 || height < 1) throw Error(ErrorCode::InvalidDimensions, "camera image is empty");
  if (!(footprint_width > 0.0) || !(footprint_depth > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "camera footprint dimensions must be > 0");
  }
  if (!(near_distance >= 0.0)) throw Error(ErrorCode::InvalidParameter, "near_distance must be >= 0");
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  return std::sqrt(segment_distance_sq(p, a, b));
}

CourseProjection project_onto_course(const CourseSpec& course, Vec2 position) {
  CourseProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < course.waypoints.size(); ++i) {
    const Vec2 a = course.waypoints[i];
    const Vec2 b = course.waypoints[i + 1];
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double len = std::sqrt(len2);
    const double t_raw = dot(position - a, ab) / len2;
    const double t = std::clamp(t_raw, 0.0, 1.0);
    const Vec2 d = position - (a + t * ab);
    const double dist = std::sqrt(dot(d, d));
    if (dist < best.distance) {
      best = CourseProjection{dist, i, t_raw, walked + t * len};
    }
    walked += len;
  }
  return best;
}

double cross_track_error(const VehicleState& state, const CourseSpec& course) {
  return project_onto_course(course, state.position).distance;
}

double normalize_angle(double radians) {
  double a = std::remainder(radians, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

RasterImage render_frame(const CourseSpec& course, const VehicleState& state,
                         const CameraModel& cam) {
  cam.validate();
  const Rgb floor = hsv_to_rgb(course.floor_color);
  const Rgb line = hsv_to_rgb(course.line_color);
  RasterImage image(cam.width, cam.height, floor);

  const CameraAxes axes = axes_for(state.heading);
  const double sx = cam.metres_per_column();
  const double sy = cam.metres_per_row();
  const double half_width = course.line_width / 2.0;
  const double hw2 = half_width * half_width;

  auto world_at = [&](int col, int row) {
    const double forward = cam.near_distance + (cam.height - 0.5 - row) * sy;
    const double lateral = (col - cam.width / 2.0) * sx;
    return state.position + forward * axes.forward + lateral * axes.right;
  };
  auto image_coords = [&](Vec2 p) {
    const Vec2 d = p - state.position;
    const double col = dot(d, axes.right) / sx + cam.width / 2.0;
    const double row = cam.height - 0.5 - (dot(d, axes.forward) - cam.near_distance) / sy;
    return Vec2{col, row};
  };

  // Conservative per-segment bounding boxes in image space; the exact
  // per-pixel distance test decides membership.
  std::vector<Vec2> tape = course.waypoints;
  if (course.run_out > 0.0 && tape.size() >= 2) {
    const Vec2 last = tape[tape.size() - 1];
    const Vec2 dir = last - tape[tape.size() - 2];
    tape.push_back(last + (course.run_out / std::sqrt(dot(dir, dir))) * dir);
  }

  const double pad_cols = half_width / sx + 2.0;
  const double pad_rows = half_width / sy + 2.0;
  for (std::size_t i = 0; i + 1 < tape.size(); ++i) {
    const Vec2 a = tape[i];
    const Vec2 b = tape[i + 1];
    const Vec2 ia = image_coords(a);
    const Vec2 ib = image_coords(b);
    const double c_lo = std::min(ia.x, ib.x) - pad_cols;
    const double c_hi = std::max(ia.x, ib.x) + pad_cols;
    const double r_lo = std::min(ia.y, ib.y) - pad_rows;
    const double r_hi = std::max(ia.y, ib.y) + pad_rows;
    if (c_hi < 0.0 || r_hi < 0.0 || c_lo > cam.width - 1 || r_lo > cam.height - 1) continue;
    const int c0 = std::max(0, static_cast<int>(std::floor(c_lo)));
    const int c1 = std::min(cam.width - 1, static_cast<int>(std::ceil(c_hi)));
    const int r0 = std::max(0, static_cast<int>(std::floor(r_lo)));
    const int r1 = std::min(cam.height - 1, static_cast<int>(std::ceil(r_hi)));
    for (int row = r0; row <= r1; ++row) {
      for (int col = c0; col <= c1; ++col) {
        if (segment_distance_sq(world_at(col, row), a, b) <= hw2) image.at(col, row) = line;
      }
    }
  }
  return image;
}

VehicleState step_vehicle(const VehicleState& state, const SteeringCommand& cmd, double dt,
                          double wheelbase) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParameter, "dt must be > 0");
  if (!(wheelbase > 0.0)) throw Error(ErrorCode::InvalidParameter, "wheelbase must be > 0");
  // Right-positive command against a counterclockwise heading.
  const double steer = cmd.valid ? -deg_to_rad(cmd.angle_deg) : 0.0;
  const double yaw_change = state.speed / wheelbase * std::tan(steer) * dt;
  const double mean_heading = state.heading + yaw_change / 2.0;
  VehicleState next = state;
  next.position.x += state.speed * dt * std::cos(mean_heading);
  next.position.y += state.speed * dt * std::sin(mean_heading);
  next.heading = normalize_angle(state.heading + yaw_change);
  return next;
}

void EpisodeConfig::validate() const {
  course.validate();
  camera.validate();
  detector.range.validate();
  detector.limits.validate();
  (void)gaussian_radius(detector.sigma);
  if (!(wheelbase > 0.0)) throw Error(ErrorCode::InvalidParameter, "wheelbase must be > 0");
  if (!(speed >= 0.0)) throw Error(ErrorCode::InvalidParameter, "speed must be >= 0");
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidParameter, "dt must be > 0");
  if (!(max_time > 0.0)) throw Error(ErrorCode::InvalidParameter, "max_time must be > 0");
  if (lost_frame_limit < 0) throw Error(ErrorCode::InvalidParameter, "lost_frame_limit must be >= 0");
  if (noise_amplitude < 0 || noise_amplitude > 255) {
    throw Error(ErrorCode::InvalidParameter, "noise amplitude must be in [0, 255]");
  }
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Timeout: return "timeout";
    case Termination::PathLost: return "path_lost";
  }
  return "unknown";
}

VehicleState initial_state(const EpisodeConfig& config) {
  const Vec2 a = config.course.waypoints.at(0);
  const Vec2 b = config.course.waypoints.at(1);
  const double heading = std::atan2(b.y - a.y, b.x - a.x);
  const CameraAxes axes = axes_for(heading);
  VehicleState s;
  s.position = a + config.initial_offset * axes.right;
  s.heading = normalize_angle(heading + config.initial_heading_offset);
  s.speed = config.speed;
  return s;
}

namespace {

void add_noise(RasterImage& image, int amplitude, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> noise(-amplitude, amplitude);
  auto jitter = [&](std::uint8_t c) {
    return static_cast<std::uint8_t>(std::clamp(static_cast<int>(c) + noise(rng), 0, 255));
  };
  for (Rgb& p : image.pixels()) {
    p.r = jitter(p.r);
    p.g = jitter(p.g);
    p.b = jitter(p.b);
  }
}

}  // namespace

EpisodeResult run_episode(const EpisodeConfig& config, const TickObserver& observer) {
  config.validate();
  const CourseSpec& course = config.course;
  const std::size_t last_segment = course.waypoints.size() - 2;
  std::mt19937_64 rng(config.seed);

  EpisodeResult result;
  EpisodeMetrics& metrics = result.metrics;
  VehicleState state = initial_state(config);
  double cross_track_sum = 0.0;
  int lost_run = 0;

  while (true) {
    RasterImage frame = render_frame(course, state, config.camera);
    if (config.noise_amplitude > 0) add_noise(frame, config.noise_amplitude, rng);
    const PathObservation obs = detect_path(frame, config.detector);
    const CourseProjection here = project_onto_course(course, state.position);

    TickRecord record;
    record.index = metrics.frames;
    record.t = static_cast<double>(metrics.frames) * config.dt;
    record.state = state;
    record.command = obs.command;
    record.raw_angle_deg = obs.raw_angle_deg;
    record.cross_track = here.distance;
    record.progress = here.progress;
    if (observer) observer(record, frame, obs);
    result.trace.push_back(record);

    cross_track_sum += here.distance;
    metrics.max_abs_cross_track = std::max(metrics.max_abs_cross_track, here.distance);
    if (obs.command.valid) {
      lost_run = 0;
    } else {
      ++lost_run;
      ++metrics.lost_frames;
    }

    state = step_vehicle(state, obs.command, config.dt, config.wheelbase);
    ++metrics.frames;
    metrics.elapsed = static_cast<double>(metrics.frames) * config.dt;

    const CourseProjection next = project_onto_course(course, state.position);
    if (next.segment == last_segment && next.t >= 1.0) {
      metrics.completed = true;
      metrics.termination = Termination::Completed;
      break;
    }
    if (lost_run > config.lost_frame_limit) {
      metrics.termination = Termination::PathLost;
      break;
    }
    if (metrics.elapsed >= config.max_time) {
      metrics.termination = Termination::Timeout;
      break;
    }
  }

  metrics.distance_traveled = config.speed * metrics.elapsed;
  metrics.mean_abs_cross_track = cross_track_sum / static_cast<double>(metrics.frames);
  metrics.error_pct = 100.0 * metrics.mean_abs_cross_track / course.line_width;
  return result;
}

}  // namespace linefollow
