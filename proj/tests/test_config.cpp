#include <doctest.h>

#include <string>

#include "linefollow/config.hpp"
#include "test_util.hpp"

using namespace linefollow;

namespace {

std::string config_error_message(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.what();
  }
  FAIL("expected a config error for: " << text);
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("empty object yields defaults") {
  const ToolConfig cfg = parse_config("{}");
  CHECK(cfg.threshold == kYellowPathRange);
  CHECK(cfg.sigma == 1.0);
  CHECK(cfg.k == 2.0);
  CHECK(cfg.min_area == 50.0);
  CHECK(cfg.camera.width == 640);
  CHECK(cfg.vehicle.speed == 6.111);
  CHECK(cfg.course.waypoints.size() == 2);
}

TEST_CASE("partial documents override only what they name") {
  const ToolConfig cfg = parse_config(R"({
    "sigma": 1.5,
    "camera": {"width": 320},
    "vehicle": {"initial_offset": -0.1},
    "course": {"waypoints": [[0, 0], [3, 4]], "line_color": {"h": 0.5}},
    "noise": {"amplitude": 4, "seed": 18446744073709551615}
  })");
  CHECK(cfg.sigma == 1.5);
  CHECK(cfg.camera.width == 320);
  CHECK(cfg.camera.height == 480);
  CHECK(cfg.vehicle.initial_offset == -0.1);
  CHECK(cfg.course.total_length() == 5.0);
  CHECK(cfg.course.line_color.h == 0.5);
  CHECK(cfg.course.line_color.s == 0.9);
  CHECK(cfg.noise.seed == 18446744073709551615ull);
  const EpisodeConfig e = cfg.episode();
  CHECK(e.noise_amplitude == 4);
  CHECK(e.detector.sigma == 1.5);
}

TEST_CASE("parse -> serialize -> parse is a fixed point") {
  ToolConfig cfg;
  cfg.threshold = HsvRange{0.1, 0.25, 0.3, 0.95, 0.35, 1.0};
  cfg.sigma = 0.7;
  cfg.steering.min_deg = -25.0;
  cfg.camera.near_distance = 0.1;
  cfg.vehicle.dt = 0.02;
  cfg.course.waypoints = {{0.0, 0.0}, {1.0 / 3.0, 0.1}, {2.0, -0.7}};
  cfg.noise.seed = 12345;
  const std::string once = serialize_config(cfg);
  const std::string twice = serialize_config(parse_config(once));
  CHECK(once == twice);
  CHECK(parse_config(once).course.waypoints[1].x == 1.0 / 3.0);
}

TEST_CASE("unknown keys and bad types report their location") {
  CHECK(contains(config_error_message(R"({"camera": {"widht": 3}})"), "/camera/widht"));
  CHECK(contains(config_error_message(R"({"bogus": 1})"), "/bogus"));
  CHECK(contains(config_error_message(R"({"sigma": "big"})"), "/sigma"));
  CHECK(contains(config_error_message(R"({"camera": {"width": 1.5}})"), "/camera/width"));
  CHECK(contains(config_error_message(R"({"course": {"waypoints": [[0, 0], [1]]}})"),
                 "/course/waypoints/1"));
  CHECK(contains(config_error_message(R"({"noise": {"seed": -1}})"), "/noise/seed"));
  CHECK(contains(config_error_message("[]"), "expected an object"));
}

TEST_CASE("syntax errors carry line and column") {
  const std::string msg = config_error_message("{\n  \"sigma\": 1.0,\n  oops\n}");
  CHECK(contains(msg, "line 3"));
}

TEST_CASE("component invariants are enforced after parsing") {
  CHECK(contains(config_error_message(R"({"threshold": {"h_lo": 0.5, "h_hi": 0.2}})"),
                 "/threshold"));
  CHECK(contains(config_error_message(R"({"sigma": 0})"), "/sigma"));
  CHECK(contains(config_error_message(R"({"k": -1})"), "/k"));
  CHECK(contains(config_error_message(R"({"steering": {"min_deg": 40}})"), "/steering"));
  CHECK(contains(config_error_message(R"({"camera": {"height": 0}})"), "/camera"));
  CHECK(contains(config_error_message(R"({"course": {"waypoints": [[0, 0]]}})"), "/course"));
  CHECK(contains(config_error_message(R"({"vehicle": {"dt": 0}})"), "/vehicle"));
  CHECK(contains(config_error_message(R"({"course": {"floor_color": {"v": 2}}})"), "/course"));
}

TEST_CASE("bundled configurations load") {
  const ToolConfig s = load_config(LINEFOLLOW_SOURCE_DIR "/configs/straight.json");
  CHECK(s.course.total_length() == 20.0);
  CHECK(s.vehicle.initial_offset == 0.2);
  const ToolConfig c = load_config(LINEFOLLOW_SOURCE_DIR "/configs/s_curve.json");
  CHECK(c.course.total_length() == doctest::Approx(100.0).epsilon(1e-9));
  CHECK(c.vehicle.speed == 6.111);
  CHECK_ERROR_CODE(load_config(LINEFOLLOW_SOURCE_DIR "/configs/missing.json"), ErrorCode::Io);
}

TEST_CASE("threshold documents") {
  const ThresholdDocument doc{HsvRange{0.1015, 0.2285, 0.4, 1.0, 0.4, 1.0}, 2.0, 4096};
  const ThresholdDocument back = parse_threshold(serialize_threshold(doc));
  CHECK(back.range == doc.range);
  CHECK(back.k == 2.0);
  CHECK(back.sample_count == 4096);
  CHECK_ERROR_CODE(parse_threshold(R"({"h_lo": 0.1})"), ErrorCode::Config);
  CHECK_ERROR_CODE(
      parse_threshold(R"({"h_lo": 0.3, "h_hi": 0.1, "s_lo": 0, "s_hi": 1, "v_lo": 0, "v_hi": 1})"),
      ErrorCode::Config);
}
