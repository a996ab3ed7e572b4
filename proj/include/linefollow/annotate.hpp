#pragma once

#include "linefollow/imaging.hpp"
#include "linefollow/pipeline.hpp"

namespace linefollow {

struct AnnotationStyle {
  Rgb contour{255, 0, 0};
  Rgb centroid{255, 0, 0};
  Rgb reference{0, 0, 255};
  int cross_half_length = 8;
};

/// Copy of frame with the selected contour outlined, a cross at the centroid
/// and the anchor-to-centroid line drawn.
RasterImage annotate_frame(const RasterImage& frame, const PathObservation& obs,
                           const AnnotationStyle& style = {});

/// Bresenham segment clipped to the image.
void draw_line(RasterImage& image, int x0, int y0, int x1, int y1, Rgb color);

}  // namespace linefollow
