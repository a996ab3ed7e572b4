#include "linefollow/annotate.hpp"

#include <cmath>
#include <cstdlib>

namespace linefollow {

void draw_line(RasterImage& image, int x0, int y0, int x1, int y1, Rgb color) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    if (image.contains(x0, y0)) image.at(x0, y0) = color;
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

RasterImage annotate_frame(const RasterImage& frame, const PathObservation& obs,
                           const AnnotationStyle& style) {
  RasterImage out = frame;
  if (obs.contour) {
    for (const Point& p : obs.contour->points) {
      if (out.contains(p.x, p.y)) out.at(p.x, p.y) = style.contour;
    }
  }
  const ReferenceFrame reference = ReferenceFrame::bottom_center(frame.width(), frame.height());
  const int ax = static_cast<int>(std::lround(reference.anchor.x));
  const int ay = static_cast<int>(std::lround(reference.anchor.y));
  if (obs.centroid) {
    const int cx = static_cast<int>(std::lround(obs.centroid->x));
    const int cy = static_cast<int>(std::lround(obs.centroid->y));
    draw_line(out, ax, ay, cx, cy, style.reference);
    const int l = style.cross_half_length;
    draw_line(out, cx - l, cy, cx + l, cy, style.centroid);
    draw_line(out, cx, cy - l, cx, cy + l, style.centroid);
  }
  // Reference vector: straight up from the anchor.
  draw_line(out, ax, ay, ax, ay - 2 * style.cross_half_length, style.reference);
  return out;
}

}  // namespace linefollow
