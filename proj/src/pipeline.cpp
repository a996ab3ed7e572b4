#include "linefollow/pipeline.hpp"

#include "linefollow/error.hpp"

namespace linefollow {

PathObservation detect_path(const RasterImage& frame, const DetectorConfig& config,
                            BinaryMask& mask_out) {
  mask_out = threshold_mask(frame, config.range, config.sigma);
  const auto contours = trace_contours(mask_out);

  PathObservation obs;
  obs.contour = select_path_contour(mask_out, contours, SelectionOptions{config.min_area});
  const ReferenceFrame reference = ReferenceFrame::bottom_center(frame.width(), frame.height());
  if (obs.contour) {
    const Moments m = region_moments(mask_out, *obs.contour);
    const Centroid c = centroid(m);
    obs.area = m.m00;
    // A centroid sitting exactly on the anchor has no direction; report it as
    // a lost frame rather than failing the whole tick.
    if (c.x != reference.anchor.x || c.y != reference.anchor.y) {
      obs.centroid = c;
      obs.raw_angle_deg = rad_to_deg(path_angle(c, reference));
    }
  }
  obs.command = steering_command(obs.centroid, reference, config.limits);
  return obs;
}

PathObservation detect_path(const RasterImage& frame, const DetectorConfig& config) {
  BinaryMask mask(frame.width(), frame.height());
  return detect_path(frame, config, mask);
}

}  // namespace linefollow
