#include "linefollow/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "linefollow/error.hpp"

namespace linefollow {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::Config, fmt::format("config error at {}: {}", path.empty() ? "/" : path, what));
}

// Typed view over one JSON object that remembers its pointer path and which
// keys were consumed.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) config_error(path_, "expected an object");
  }

  bool has(const char* key) const { return node_.contains(key); }

  std::string child_path(const char* key) const { return path_ + "/" + key; }

  const json& child(const char* key) {
    seen_.insert(key);
    return node_.at(key);
  }

  void number(const char* key, double& out) {
    if (!has(key)) return;
    const json& v = child(key);
    if (!v.is_number()) config_error(child_path(key), "expected a number");
    out = v.get<double>();
  }

  void integer(const char* key, int& out) {
    if (!has(key)) return;
    const json& v = child(key);
    if (!v.is_number_integer()) config_error(child_path(key), "expected an integer");
    out = v.get<int>();
  }

  void unsigned_integer(const char* key, std::uint64_t& out) {
    if (!has(key)) return;
    const json& v = child(key);
    if (!v.is_number_unsigned()) config_error(child_path(key), "expected a non-negative integer");
    out = v.get<std::uint64_t>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.contains(key)) config_error(path_ + "/" + key, "unknown key");
    }
  }

  const std::string& path() const noexcept { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

HsvRange read_range(ObjectReader& r, HsvRange range) {
  r.number("h_lo", range.h_lo);
  r.number("h_hi", range.h_hi);
  r.number("s_lo", range.s_lo);
  r.number("s_hi", range.s_hi);
  r.number("v_lo", range.v_lo);
  r.number("v_hi", range.v_hi);
  return range;
}

HsvPixel read_color(const json& node, const std::string& path, HsvPixel color) {
  ObjectReader r(node, path);
  r.number("h", color.h);
  r.number("s", color.s);
  r.number("v", color.v);
  r.finish();
  return color;
}

std::vector<Vec2> read_waypoints(const json& node, const std::string& path) {
  if (!node.is_array()) config_error(path, "expected an array of [x, y] pairs");
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const json& p = node[i];
    const std::string here = fmt::format("{}/{}", path, i);
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      config_error(here, "expected [x, y]");
    }
    out.push_back(Vec2{p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

json range_json(const HsvRange& r) {
  return json{{"h_lo", r.h_lo}, {"h_hi", r.h_hi}, {"s_lo", r.s_lo},
              {"s_hi", r.s_hi}, {"v_lo", r.v_lo}, {"v_hi", r.v_hi}};
}

json color_json(const HsvPixel& c) { return json{{"h", c.h}, {"s", c.s}, {"v", c.v}}; }

template <typename F>
void check(const std::string& path, F&& validate) {
  try {
    validate();
  } catch (const Error& e) {
    config_error(path, e.what());
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, fmt::format("config parse error: {}", e.what()));
  }
}

}  // namespace

DetectorConfig ToolConfig::detector() const {
  return DetectorConfig{threshold, sigma, min_area, steering};
}

EpisodeConfig ToolConfig::episode() const {
  EpisodeConfig e;
  e.course = course;
  e.detector = detector();
  e.camera = camera;
  e.wheelbase = vehicle.wheelbase;
  e.speed = vehicle.speed;
  e.dt = vehicle.dt;
  e.max_time = vehicle.max_time;
  e.lost_frame_limit = vehicle.lost_frame_limit;
  e.initial_offset = vehicle.initial_offset;
  e.initial_heading_offset = vehicle.initial_heading_offset;
  e.noise_amplitude = noise.amplitude;
  e.seed = noise.seed;
  return e;
}

ToolConfig parse_config(const std::string& text) {
  const json root = parse_json(text);
  ToolConfig cfg;
  ObjectReader top(root, "");

  if (top.has("threshold")) {
    ObjectReader r(top.child("threshold"), top.child_path("threshold"));
    cfg.threshold = read_range(r, cfg.threshold);
    r.finish();
    check(r.path(), [&] { cfg.threshold.validate(); });
  }
  top.number("sigma", cfg.sigma);
  check("/sigma", [&] { (void)gaussian_radius(cfg.sigma); });
  top.number("k", cfg.k);
  if (!(cfg.k > 0.0)) config_error("/k", "must be > 0");
  top.number("min_area", cfg.min_area);
  if (!(cfg.min_area >= 0.0)) config_error("/min_area", "must be >= 0");

  if (top.has("steering")) {
    ObjectReader r(top.child("steering"), top.child_path("steering"));
    r.number("min_deg", cfg.steering.min_deg);
    r.number("max_deg", cfg.steering.max_deg);
    r.number("raw_min_deg", cfg.steering.raw_min_deg);
    r.number("raw_max_deg", cfg.steering.raw_max_deg);
    r.finish();
    check(r.path(), [&] { cfg.steering.validate(); });
  }

  if (top.has("camera")) {
    ObjectReader r(top.child("camera"), top.child_path("camera"));
    r.integer("width", cfg.camera.width);
    r.integer("height", cfg.camera.height);
    r.number("footprint_width", cfg.camera.footprint_width);
    r.number("footprint_depth", cfg.camera.footprint_depth);
    r.number("near_distance", cfg.camera.near_distance);
    r.finish();
    check(r.path(), [&] { cfg.camera.validate(); });
  }

  if (top.has("vehicle")) {
    ObjectReader r(top.child("vehicle"), top.child_path("vehicle"));
    r.number("wheelbase", cfg.vehicle.wheelbase);
    r.number("speed", cfg.vehicle.speed);
    r.number("dt", cfg.vehicle.dt);
    r.number("max_time", cfg.vehicle.max_time);
    r.integer("lost_frame_limit", cfg.vehicle.lost_frame_limit);
    r.number("initial_offset", cfg.vehicle.initial_offset);
    r.number("initial_heading_offset", cfg.vehicle.initial_heading_offset);
    r.finish();
  }

  if (top.has("course")) {
    ObjectReader r(top.child("course"), top.child_path("course"));
    if (r.has("waypoints")) {
      cfg.course.waypoints = read_waypoints(r.child("waypoints"), r.child_path("waypoints"));
    }
    r.number("line_width", cfg.course.line_width);
    r.number("run_out", cfg.course.run_out);
    if (r.has("line_color")) {
      cfg.course.line_color =
          read_color(r.child("line_color"), r.child_path("line_color"), cfg.course.line_color);
    }
    if (r.has("floor_color")) {
      cfg.course.floor_color =
          read_color(r.child("floor_color"), r.child_path("floor_color"), cfg.course.floor_color);
    }
    r.finish();
    check(r.path(), [&] { cfg.course.validate(); });
  }

  if (top.has("noise")) {
    ObjectReader r(top.child("noise"), top.child_path("noise"));
    r.integer("amplitude", cfg.noise.amplitude);
    r.unsigned_integer("seed", cfg.noise.seed);
    r.finish();
  }
  top.finish();

  check("/vehicle", [&] { cfg.episode().validate(); });
  return cfg;
}

std::string serialize_config(const ToolConfig& cfg) {
  json waypoints = json::array();
  for (const Vec2& p : cfg.course.waypoints) waypoints.push_back(json::array({p.x, p.y}));
  const json root{
      {"threshold", range_json(cfg.threshold)},
      {"sigma", cfg.sigma},
      {"k", cfg.k},
      {"min_area", cfg.min_area},
      {"steering",
       {{"min_deg", cfg.steering.min_deg},
        {"max_deg", cfg.steering.max_deg},
        {"raw_min_deg", cfg.steering.raw_min_deg},
        {"raw_max_deg", cfg.steering.raw_max_deg}}},
      {"camera",
       {{"width", cfg.camera.width},
        {"height", cfg.camera.height},
        {"footprint_width", cfg.camera.footprint_width},
        {"footprint_depth", cfg.camera.footprint_depth},
        {"near_distance", cfg.camera.near_distance}}},
      {"vehicle",
       {{"wheelbase", cfg.vehicle.wheelbase},
        {"speed", cfg.vehicle.speed},
        {"dt", cfg.vehicle.dt},
        {"max_time", cfg.vehicle.max_time},
        {"lost_frame_limit", cfg.vehicle.lost_frame_limit},
        {"initial_offset", cfg.vehicle.initial_offset},
        {"initial_heading_offset", cfg.vehicle.initial_heading_offset}}},
      {"course",
       {{"waypoints", waypoints},
        {"line_width", cfg.course.line_width},
        {"run_out", cfg.course.run_out},
        {"line_color", color_json(cfg.course.line_color)},
        {"floor_color", color_json(cfg.course.floor_color)}}},
      {"noise", {{"amplitude", cfg.noise.amplitude}, {"seed", cfg.noise.seed}}},
  };
  return root.dump(2) + "\n";
}

std::string serialize_threshold(const ThresholdDocument& doc) {
  json root = range_json(doc.range);
  root["k"] = doc.k;
  root["sample_count"] = doc.sample_count;
  return root.dump(2) + "\n";
}

ThresholdDocument parse_threshold(const std::string& text) {
  const json root = parse_json(text);
  ObjectReader r(root, "");
  ThresholdDocument doc;
  for (const char* key : {"h_lo", "h_hi", "s_lo", "s_hi", "v_lo", "v_hi"}) {
    if (!r.has(key)) config_error(r.child_path(key), "missing threshold bound");
  }
  doc.range = read_range(r, doc.range);
  r.number("k", doc.k);
  std::uint64_t count = 0;
  r.unsigned_integer("sample_count", count);
  doc.sample_count = static_cast<std::size_t>(count);
  r.finish();
  check("/", [&] { doc.range.validate(); });
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

ToolConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

ThresholdDocument load_threshold(const std::filesystem::path& path) {
  return parse_threshold(read_text_file(path));
}

}  // namespace linefollow
