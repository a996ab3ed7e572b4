#pragma once

// Border following on binary masks, path-contour selection and moments.
//
// Foreground is 8-connected and background 4-connected.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "linefollow/colorspace.hpp"

namespace linefollow {

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Closed sequence of border pixels. Consecutive points (and last/first) are
/// 8-neighbours; thin structures revisit pixels. Outer borders run
/// counterclockwise on screen (down the left side first).
struct Contour {
  std::vector<Point> points;
  bool is_outer = true;
  /// Index of the enclosing border in the trace_contours() output, if any.
  std::optional<std::size_t> parent;
};

/// Raw spatial moments m_ji = sum x^j y^i, j + i <= 2.
struct Moments {
  double m00 = 0.0;
  double m10 = 0.0;
  double m01 = 0.0;
  double m20 = 0.0;
  double m11 = 0.0;
  double m02 = 0.0;

  friend bool operator==(const Moments&, const Moments&) = default;
};

struct CentralMoments {
  double mu20 = 0.0;
  double mu11 = 0.0;
  double mu02 = 0.0;

  friend bool operator==(const CentralMoments&, const CentralMoments&) = default;
};

struct Centroid {
  double x = 0.0;
  double y = 0.0;
};

/// Suzuki-Abe border following. Borders are listed in raster-scan discovery
/// order: one outer border per 8-connected foreground component and one hole
/// border per 4-connected background hole.
std::vector<Contour> trace_contours(const BinaryMask& mask);

struct SelectionOptions {
  double min_area = 50.0;
};

/// Outer contour with the largest filled area (earliest on ties), or nothing
/// when no candidate reaches min_area.
std::optional<Contour> select_path_contour(const BinaryMask& mask,
                                           std::span<const Contour> contours,
                                           const SelectionOptions& options = {});

/// Moments of the foreground component bounded by an outer contour. The
/// component is recovered by a scanline fill seeded at the contour.
Moments region_moments(const BinaryMask& mask, const Contour& region);

/// Foreground pixels of the component bounded by an outer contour.
std::vector<Point> region_pixels(const BinaryMask& mask, const Contour& region);

CentralMoments central_moments(const Moments& m);

Centroid centroid(const Moments& m);

/// Moments of the polygon spanned by the vertices, by Green's theorem. The
/// result is independent of vertex orientation and starting vertex.
Moments contour_moments_green(std::span<const Point> polygon);
inline Moments contour_moments_green(const Contour& c) { return contour_moments_green(c.points); }

/// Pixel-edge outline of the component bounded by an outer contour, as
/// integer lattice corners: corner (x, y) is the top-left corner of pixel
/// (x, y). The enclosed polygon is the union of the component's unit pixel
/// squares (plus any holes it surrounds).
std::vector<Point> outline_polygon(const BinaryMask& mask, const Contour& region);

/// Moments of the same mass distribution with coordinates shifted by (dx, dy).
Moments translated(const Moments& m, double dx, double dy);

}  // namespace linefollow
