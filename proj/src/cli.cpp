#include "linefollow/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "linefollow/annotate.hpp"
#include "linefollow/colorspace.hpp"
#include "linefollow/command_link.hpp"
#include "linefollow/config.hpp"
#include "linefollow/error.hpp"
#include "linefollow/pipeline.hpp"
#include "linefollow/ppm.hpp"
#include "linefollow/simulator.hpp"

namespace linefollow::cli {

namespace fs = std::filesystem;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string threshold_path;
  std::optional<double> sigma;
};

ToolConfig resolve_config(const CommonOptions& opts) {
  ToolConfig cfg = opts.config_path.empty() ? ToolConfig{} : load_config(opts.config_path);
  if (!opts.threshold_path.empty()) cfg.threshold = load_threshold(opts.threshold_path).range;
  if (opts.sigma) {
    try {
      (void)gaussian_radius(*opts.sigma);
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, std::string("--sigma: ") + e.what());
    }
    cfg.sigma = *opts.sigma;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOptions {
  std::vector<std::string> images;
  std::vector<std::string> masks;
  double k = 2.0;
  int bins = 32;
  std::string out;
  std::string histogram;
};

fs::path histogram_path_for(const CalibrateOptions& o) {
  if (!o.histogram.empty()) return o.histogram;
  fs::path p(o.out);
  p.replace_extension(".histogram.csv");
  return p;
}

int cmd_calibrate(const CalibrateOptions& o, std::ostream& out) {
  if (!o.masks.empty() && o.masks.size() != o.images.size()) {
    throw Error(ErrorCode::Config,
                fmt::format("{} mask images given for {} sample images", o.masks.size(),
                            o.images.size()));
  }
  if (!(o.k > 0.0)) throw Error(ErrorCode::Config, "--k must be > 0");

  std::vector<HsvPixel> samples;
  for (std::size_t i = 0; i < o.images.size(); ++i) {
    const RasterImage image = read_ppm(o.images[i]);
    std::optional<RasterImage> mask;
    if (!o.masks.empty()) {
      mask = read_ppm(o.masks[i]);
      if (mask->width() != image.width() || mask->height() != image.height()) {
        throw Error(ErrorCode::InvalidDimensions,
                    fmt::format("mask {} is {}x{} but image {} is {}x{}", o.masks[i],
                                mask->width(), mask->height(), o.images[i], image.width(),
                                image.height()));
      }
    }
    for (int y = 0; y < image.height(); ++y) {
      for (int x = 0; x < image.width(); ++x) {
        const HsvPixel p = rgb_to_hsv(image.at(x, y));
        bool take = false;
        if (mask) {
          const Rgb m = mask->at(x, y);
          take = m.r != 0 || m.g != 0 || m.b != 0;
        } else {
          take = p.v > 0.2 && p.s > 0.2;
        }
        if (take) samples.push_back(p);
      }
    }
  }
  if (samples.size() < 2) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("no path pixels found ({} samples)", samples.size()));
  }

  std::vector<double> hs, ss, vs;
  hs.reserve(samples.size());
  ss.reserve(samples.size());
  vs.reserve(samples.size());
  for (const HsvPixel& p : samples) {
    hs.push_back(p.h);
    ss.push_back(p.s);
    vs.push_back(p.v);
  }
  const ChannelStats h = fit_channel_stats(hs);
  const ChannelStats s = fit_channel_stats(ss);
  const ChannelStats v = fit_channel_stats(vs);
  const HsvRange range = derive_range(h, s, v, o.k);
  write_text_file(o.out, serialize_threshold(ThresholdDocument{range, o.k, samples.size()}));

  const HsvHistogram hist = hsv_histogram(samples, o.bins);
  std::string csv = "bin,lo,hi,h_count,s_count,v_count\n";
  for (int b = 0; b < hist.bins(); ++b) {
    const auto ub = static_cast<std::size_t>(b);
    csv += fmt::format("{},{},{},{},{},{}\n", b, hist.bin_edge(b), hist.bin_edge(b + 1),
                       hist.counts(HsvChannel::Hue)[ub], hist.counts(HsvChannel::Saturation)[ub],
                       hist.counts(HsvChannel::Value)[ub]);
  }
  write_text_file(histogram_path_for(o), csv);

  out << fmt::format("samples: {}\n", samples.size());
  out << fmt::format("h: mean {:.6f} std {:.6f} -> [{:.6f}, {:.6f}]\n", h.mean, h.stddev,
                     range.h_lo, range.h_hi);
  out << fmt::format("s: mean {:.6f} std {:.6f} -> [{:.6f}, {:.6f}]\n", s.mean, s.stddev,
                     range.s_lo, range.s_hi);
  out << fmt::format("v: mean {:.6f} std {:.6f} -> [{:.6f}, {:.6f}]\n", v.mean, v.stddev,
                     range.v_lo, range.v_hi);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// detect

struct DetectOptions {
  CommonOptions common;
  std::string frame;
  std::string out;
};

int cmd_detect(const DetectOptions& o, std::ostream& out, std::ostream& err) {
  const ToolConfig cfg = resolve_config(o.common);
  const RasterImage frame = read_ppm(o.frame);
  const PathObservation obs = detect_path(frame, cfg.detector());
  if (!o.out.empty()) write_ppm(o.out, annotate_frame(frame, obs));

  if (!obs.detected()) {
    err << "no path detected\n";
    return kNoPath;
  }
  out << fmt::format("centroid: {:.3f} {:.3f}\n", obs.centroid->x, obs.centroid->y);
  out << fmt::format("area: {:.0f}\n", obs.area);
  out << fmt::format("raw_angle_deg: {:.2f}\n", obs.raw_angle_deg);
  out << fmt::format("steering_deg: {:.2f}\n", obs.command.angle_deg);
  out << fmt::format("frame: {}\n", to_hex(encode_frame(obs.command, 0)));
  return kSuccess;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  CommonOptions common;
  std::string out;
  std::string trace;
  int frames_every = 0;
  std::string frames_dir = "frames";
  std::optional<std::uint64_t> seed;
  std::optional<double> max_time;
};

constexpr const char* kMetricsHeader =
    "distance_traveled,elapsed,mean_abs_cross_track,max_abs_cross_track,error_pct,completed,"
    "frames,lost_frames,termination\n";

std::string metrics_row(const EpisodeMetrics& m) {
  return fmt::format("{},{},{},{},{},{},{},{},{}\n", m.distance_traveled, m.elapsed,
                     m.mean_abs_cross_track, m.max_abs_cross_track, m.error_pct,
                     m.completed ? "true" : "false", m.frames, m.lost_frames,
                     to_string(m.termination));
}

void append_metrics(const fs::path& path, const EpisodeMetrics& m) {
  std::error_code ec;
  const bool fresh = !fs::exists(path, ec) || fs::file_size(path, ec) == 0;
  std::ofstream csv(path, std::ios::app);
  if (!csv) throw Error(ErrorCode::Io, "cannot write " + path.string());
  if (fresh) csv << kMetricsHeader;
  csv << metrics_row(m);
  if (!csv) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  ToolConfig cfg = resolve_config(o.common);
  if (o.seed) cfg.noise.seed = *o.seed;
  if (o.max_time) {
    if (!(*o.max_time > 0.0)) throw Error(ErrorCode::Config, "--max-time must be > 0");
    cfg.vehicle.max_time = *o.max_time;
  }
  if (o.frames_every < 0) throw Error(ErrorCode::Config, "--frames-every must be >= 0");
  EpisodeConfig episode = cfg.episode();
  try {
    episode.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }

  std::optional<std::ofstream> trace;
  if (!o.trace.empty()) {
    trace.emplace(o.trace, std::ios::trunc);
    if (!*trace) throw Error(ErrorCode::Io, "cannot write " + o.trace);
    *trace << "t,x,y,heading,angle_deg,valid,cross_track,frame_hex\n";
  }
  if (o.frames_every > 0) fs::create_directories(o.frames_dir);

  TickObserver observer = [&](const TickRecord& r, const RasterImage& frame,
                              const PathObservation& obs) {
    if (trace) {
      const auto seq = static_cast<std::uint8_t>(r.index & 0xFF);
      *trace << fmt::format("{},{},{},{},{},{},{},{}\n", r.t, r.state.position.x,
                            r.state.position.y, r.state.heading, r.command.angle_deg,
                            r.command.valid ? 1 : 0, r.cross_track,
                            to_hex(encode_frame(r.command, seq)));
    }
    if (o.frames_every > 0 && r.index % static_cast<std::size_t>(o.frames_every) == 0) {
      write_ppm(fs::path(o.frames_dir) / fmt::format("frame_{:05d}.ppm", r.index),
                annotate_frame(frame, obs));
    }
  };

  const EpisodeResult result = run_episode(episode, observer);
  const EpisodeMetrics& m = result.metrics;
  if (!o.out.empty()) append_metrics(o.out, m);
  out << fmt::format(
      "completed={} termination={} frames={} elapsed={:.2f}s distance={:.2f}m "
      "mean_cross_track={:.4f}m error_pct={:.3f}\n",
      m.completed ? "true" : "false", to_string(m.termination), m.frames, m.elapsed,
      m.distance_traveled, m.mean_abs_cross_track, m.error_pct);
  return kSuccess;
}

// ---------------------------------------------------------------------------
// render

struct RenderOptions {
  CommonOptions common;
  std::string out;
  std::optional<double> x;
  std::optional<double> y;
  std::optional<double> heading;
};

int cmd_render(const RenderOptions& o, std::ostream& out) {
  const ToolConfig cfg = resolve_config(o.common);
  VehicleState state = initial_state(cfg.episode());
  if (o.x) state.position.x = *o.x;
  if (o.y) state.position.y = *o.y;
  if (o.heading) state.heading = normalize_angle(*o.heading);
  write_ppm(o.out, render_frame(cfg.course, state, cfg.camera));
  out << fmt::format("rendered {}x{} frame at ({:.3f}, {:.3f}, {:.4f} rad) -> {}\n",
                     cfg.camera.width, cfg.camera.height, state.position.x, state.position.y,
                     state.heading, o.out);
  return kSuccess;
}

void add_common(CLI::App* sub, CommonOptions& common) {
  sub->add_option("--config", common.config_path, "JSON tool configuration");
  sub->add_option("--threshold", common.threshold_path, "threshold JSON from calibrate");
  sub->add_option("--sigma", common.sigma, "Gaussian smoothing sigma");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientData: return kNoPath;
    case ErrorCode::Io: return kIoError;
    case ErrorCode::Config:
    case ErrorCode::InvalidParameter:
    case ErrorCode::InvalidDimensions:
    case ErrorCode::HueWraparound: return kConfigError;
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::MalformedHeader:
    case ErrorCode::UnsupportedMaxval:
    case ErrorCode::TruncatedData: return kIoError;
    default: return kFailure;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colour-line detection and closed-loop line-following simulation", "linefollow"};
  app.require_subcommand(1);

  CalibrateOptions calibrate;
  auto* cal = app.add_subcommand("calibrate", "derive an HSV threshold from sample frames");
  cal->add_option("images", calibrate.images, "sample PPM frames")->required();
  cal->add_option("--mask", calibrate.masks, "PPM masks marking path pixels (non-black)");
  cal->add_option("--k", calibrate.k, "bound multiplier on the standard deviation");
  cal->add_option("--bins", calibrate.bins, "histogram bins per channel")
      ->check(CLI::Range(2, 4096));
  cal->add_option("--out", calibrate.out, "threshold JSON output")->required();
  cal->add_option("--histogram", calibrate.histogram, "histogram CSV output");

  DetectOptions detect;
  auto* det = app.add_subcommand("detect", "detect the path in one frame");
  det->add_option("frame", detect.frame, "PPM frame")->required();
  add_common(det, detect.common);
  det->add_option("--out", detect.out, "annotated PPM output");

  SimulateOptions simulate;
  auto* sim = app.add_subcommand("simulate", "run a closed-loop episode");
  add_common(sim, simulate.common);
  sim->add_option("--out", simulate.out, "metrics CSV (one row appended per episode)");
  sim->add_option("--trace", simulate.trace, "per-tick trace CSV");
  sim->add_option("--frames-every", simulate.frames_every, "dump an annotated frame every K ticks");
  sim->add_option("--frames-dir", simulate.frames_dir, "directory for frame dumps");
  sim->add_option("--seed", simulate.seed, "pixel-noise seed");
  sim->add_option("--max-time", simulate.max_time, "episode time limit in seconds");

  RenderOptions render;
  auto* ren = app.add_subcommand("render", "render the camera frame for a vehicle pose");
  add_common(ren, render.common);
  ren->add_option("--out", render.out, "PPM output")->required();
  ren->add_option("--x", render.x, "vehicle x (m)");
  ren->add_option("--y", render.y, "vehicle y (m)");
  ren->add_option("--heading", render.heading, "vehicle heading (rad, counterclockwise from +x)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  try {
    if (*cal) return cmd_calibrate(calibrate, out);
    if (*det) return cmd_detect(detect, out, err);
    if (*sim) return cmd_simulate(simulate, out);
    if (*ren) return cmd_render(render, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kFailure;
}

}  // namespace linefollow::cli
