#pragma once

// JSON tool configuration and calibration documents.

#include <cstdint>
#include <filesystem>
#include <string>

#include "linefollow/colorspace.hpp"
#include "linefollow/simulator.hpp"
#include "linefollow/steering.hpp"

namespace linefollow {

struct VehicleParams {
  double wheelbase = 0.3;
  double speed = 6.111;
  double dt = 0.05;
  double max_time = 60.0;
  int lost_frame_limit = 10;
  double initial_offset = 0.0;
  double initial_heading_offset = 0.0;
};

struct NoiseParams {
  int amplitude = 0;
  std::uint64_t seed = 0;
};

struct ToolConfig {
  HsvRange threshold = kYellowPathRange;
  double sigma = 1.0;
  double k = 2.0;
  double min_area = 50.0;
  SteeringLimits steering;
  CameraModel camera;
  VehicleParams vehicle;
  CourseSpec course{{Vec2{0.0, 0.0}, Vec2{20.0, 0.0}}};
  NoiseParams noise;

  DetectorConfig detector() const;
  EpisodeConfig episode() const;
};

/// Throws Error(Config) with the offending JSON pointer or the parser's
/// line/column. Unknown keys are rejected; missing keys keep defaults.
ToolConfig parse_config(const std::string& text);
ToolConfig load_config(const std::filesystem::path& path);

/// Pretty-printed JSON with every field spelled out.
std::string serialize_config(const ToolConfig& config);

/// Threshold document written by calibration.
struct ThresholdDocument {
  HsvRange range;
  double k = 2.0;
  std::size_t sample_count = 0;
};

std::string serialize_threshold(const ThresholdDocument& doc);
ThresholdDocument parse_threshold(const std::string& text);
ThresholdDocument load_threshold(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace linefollow
