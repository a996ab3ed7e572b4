#include "linefollow/contour.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "linefollow/error.hpp"

namespace linefollow {

namespace {

// Neighbour offsets in clockwise screen order starting east.
constexpr std::array<int, 8> kDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy{0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kEast = 0;
constexpr int kWest = 4;

int direction_between(int fx, int fy, int tx, int ty) {
  const int dx = tx - fx;
  const int dy = ty - fy;
  for (int d = 0; d < 8; ++d) {
    if (kDx[d] == dx && kDy[d] == dy) return d;
  }
  return -1;
}

// Padded label grid: one ring of background around the mask.
class LabelGrid {
 public:
  explicit LabelGrid(const BinaryMask& mask)
      : stride_(mask.width() + 2), rows_(mask.height() + 2),
        cells_(static_cast<std::size_t>(stride_) * static_cast<std::size_t>(rows_), 0) {
    for (int y = 0; y < mask.height(); ++y) {
      for (int x = 0; x < mask.width(); ++x) {
        if (mask.at(x, y)) at(x + 1, y + 1) = 1;
      }
    }
  }

  std::int32_t& at(int x, int y) {
    return cells_[static_cast<std::size_t>(y) * static_cast<std::size_t>(stride_) +
                  static_cast<std::size_t>(x)];
  }

 private:
  int stride_;
  int rows_;
  std::vector<std::int32_t> cells_;
};

struct BorderInfo {
  bool is_outer = false;
  std::optional<std::size_t> contour;  // empty for the frame border
};

// Collects the 8-connected foreground component containing seed using a
// scanline fill. visited is a width*height scratch buffer.
void fill_component(const BinaryMask& mask, Point seed, std::vector<std::uint8_t>& visited,
                    std::vector<Point>* pixels, Moments* moments) {
  const int w = mask.width();
  const int h = mask.height();
  auto idx = [w](int x, int y) {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x);
  };
  if (!mask.get_or_false(seed.x, seed.y) || visited[idx(seed.x, seed.y)]) return;

  std::int64_t s00 = 0, s10 = 0, s01 = 0, s20 = 0, s11 = 0, s02 = 0;
  std::vector<Point> stack{seed};
  while (!stack.empty()) {
    const Point p = stack.back();
    stack.pop_back();
    if (visited[idx(p.x, p.y)]) continue;

    int left = p.x;
    while (left > 0 && mask.at(left - 1, p.y) && !visited[idx(left - 1, p.y)]) --left;
    int right = p.x;
    while (right + 1 < w && mask.at(right + 1, p.y) && !visited[idx(right + 1, p.y)]) ++right;

    const std::int64_t y = p.y;
    for (int x = left; x <= right; ++x) {
      visited[idx(x, p.y)] = 1;
      const std::int64_t xx = x;
      ++s00;
      s10 += xx;
      s01 += y;
      s20 += xx * xx;
      s11 += xx * y;
      s02 += y * y;
      if (pixels != nullptr) pixels->push_back(Point{x, p.y});
    }

    // Diagonal contact counts for 8-connectivity, hence the widened span.
    for (int ny : {p.y - 1, p.y + 1}) {
      if (ny < 0 || ny >= h) continue;
      const int lo = std::max(0, left - 1);
      const int hi = std::min(w - 1, right + 1);
      bool in_run = false;
      for (int x = lo; x <= hi; ++x) {
        const bool open = mask.at(x, ny) && !visited[idx(x, ny)];
        if (open && !in_run) stack.push_back(Point{x, ny});
        in_run = open;
      }
    }
  }

  if (moments != nullptr) {
    *moments = Moments{static_cast<double>(s00), static_cast<double>(s10),
                       static_cast<double>(s01), static_cast<double>(s20),
                       static_cast<double>(s11), static_cast<double>(s02)};
  }
}

void require_outer(const BinaryMask& mask, const Contour& region) {
  if (!region.is_outer) {
    throw Error(ErrorCode::InvalidParameter, "region moments need an outer contour");
  }
  if (region.points.empty() || !mask.get_or_false(region.points.front().x,
                                                  region.points.front().y)) {
    throw Error(ErrorCode::DegenerateRegion, "contour does not bound any foreground pixel");
  }
}

std::vector<std::uint8_t> scratch_for(const BinaryMask& mask) {
  return std::vector<std::uint8_t>(
      static_cast<std::size_t>(mask.width()) * static_cast<std::size_t>(mask.height()), 0);
}

__extension__ using Int128 = __int128;

bool is_integral(double v) {
  return std::nearbyint(v) == v && std::abs(v) < 9.0e15;
}

// (a * b - c * d) / a evaluated exactly in integers before the final division.
double exact_spread(double m00, double m_second, double m_a, double m_b) {
  const auto n = static_cast<Int128>(static_cast<std::int64_t>(m00)) *
                     static_cast<std::int64_t>(m_second) -
                 static_cast<Int128>(static_cast<std::int64_t>(m_a)) *
                     static_cast<std::int64_t>(m_b);
  return static_cast<double>(n) / m00;
}

}  // namespace

std::vector<Contour> trace_contours(const BinaryMask& mask) {
  LabelGrid f(mask);
  std::vector<Contour> contours;
  // Index = border label (NBD). Label 1 is the frame, treated as a hole border.
  std::vector<BorderInfo> borders(2);
  borders[1] = BorderInfo{false, std::nullopt};

  std::int32_t nbd = 1;
  for (int y = 1; y <= mask.height(); ++y) {
    std::int32_t lnbd = 1;
    for (int x = 1; x <= mask.width(); ++x) {
      const std::int32_t fij = f.at(x, y);
      if (fij == 0) continue;

      bool start = false;
      bool outer = false;
      int from_dir = 0;
      if (fij == 1 && f.at(x - 1, y) == 0) {
        start = true;
        outer = true;
        from_dir = kWest;
      } else if (fij >= 1 && f.at(x + 1, y) == 0) {
        start = true;
        outer = false;
        from_dir = kEast;
        if (fij > 1) lnbd = fij;
      }

      if (start) {
        ++nbd;
        const BorderInfo& prev = borders[static_cast<std::size_t>(lnbd)];
        std::optional<std::size_t> parent;
        if (outer) {
          parent = prev.is_outer ? contours[*prev.contour].parent : prev.contour;
        } else {
          parent = prev.is_outer ? prev.contour : (prev.contour ? contours[*prev.contour].parent
                                                                : std::nullopt);
        }
        Contour contour;
        contour.is_outer = outer;
        contour.parent = parent;

        // Clockwise search for the first non-zero neighbour.
        int found = -1;
        for (int k = 0; k < 8; ++k) {
          const int d = (from_dir + k) % 8;
          if (f.at(x + kDx[d], y + kDy[d]) != 0) {
            found = d;
            break;
          }
        }

        if (found < 0) {
          f.at(x, y) = -nbd;
          contour.points.push_back(Point{x - 1, y - 1});
        } else {
          const int x1 = x + kDx[found];
          const int y1 = y + kDy[found];
          int x2 = x1, y2 = y1;
          int x3 = x, y3 = y;
          while (true) {
            // Counterclockwise search around (x3, y3) starting after (x2, y2).
            const int back = direction_between(x3, y3, x2, y2);
            bool east_zero = false;
            int x4 = x3, y4 = y3;
            for (int k = 1; k <= 8; ++k) {
              const int d = ((back - k) % 8 + 8) % 8;
              const int nx = x3 + kDx[d];
              const int ny = y3 + kDy[d];
              if (f.at(nx, ny) != 0) {
                x4 = nx;
                y4 = ny;
                break;
              }
              if (d == kEast) east_zero = true;
            }
            if (east_zero) {
              f.at(x3, y3) = -nbd;
            } else if (f.at(x3, y3) == 1) {
              f.at(x3, y3) = nbd;
            }
            contour.points.push_back(Point{x3 - 1, y3 - 1});

            if (x4 == x && y4 == y && x3 == x1 && y3 == y1) break;
            x2 = x3;
            y2 = y3;
            x3 = x4;
            y3 = y4;
          }
        }

        borders.push_back(BorderInfo{outer, contours.size()});
        contours.push_back(std::move(contour));
      }

      const std::int32_t now = f.at(x, y);
      if (now != 1) lnbd = std::abs(now);
    }
  }
  return contours;
}

std::vector<Point> region_pixels(const BinaryMask& mask, const Contour& region) {
  require_outer(mask, region);
  auto visited = scratch_for(mask);
  std::vector<Point> pixels;
  fill_component(mask, region.points.front(), visited, &pixels, nullptr);
  return pixels;
}

Moments region_moments(const BinaryMask& mask, const Contour& region) {
  require_outer(mask, region);
  auto visited = scratch_for(mask);
  Moments m;
  fill_component(mask, region.points.front(), visited, nullptr, &m);
  if (m.m00 <= 0.0) throw Error(ErrorCode::DegenerateRegion, "region has no pixels");
  return m;
}

std::optional<Contour> select_path_contour(const BinaryMask& mask,
                                           std::span<const Contour> contours,
                                           const SelectionOptions& options) {
  auto visited = scratch_for(mask);
  const Contour* best = nullptr;
  double best_area = -1.0;
  for (const Contour& c : contours) {
    if (!c.is_outer || c.points.empty()) continue;
    const Point seed = c.points.front();
    if (!mask.get_or_false(seed.x, seed.y)) continue;
    Moments m;
    // Components are disjoint, so one scratch buffer serves every candidate.
    fill_component(mask, seed, visited, nullptr, &m);
    if (m.m00 > best_area) {
      best_area = m.m00;
      best = &c;
    }
  }
  if (best == nullptr || best_area < options.min_area) return std::nullopt;
  return *best;
}

CentralMoments central_moments(const Moments& m) {
  if (!(m.m00 > 0.0)) throw Error(ErrorCode::DegenerateRegion, "central moments need m00 > 0");
  const bool integral = is_integral(m.m00) && is_integral(m.m10) && is_integral(m.m01) &&
                        is_integral(m.m20) && is_integral(m.m11) && is_integral(m.m02);
  if (integral) {
    // Pixel-region moments: the numerators m00*m20 - m10^2 etc. are exact
    // integers, so the result does not depend on where the region sits.
    return CentralMoments{exact_spread(m.m00, m.m20, m.m10, m.m10),
                          exact_spread(m.m00, m.m11, m.m10, m.m01),
                          exact_spread(m.m00, m.m02, m.m01, m.m01)};
  }
  const double cx = m.m10 / m.m00;
  const double cy = m.m01 / m.m00;
  return CentralMoments{m.m20 - cx * m.m10, m.m11 - cx * m.m01, m.m02 - cy * m.m01};
}

Centroid centroid(const Moments& m) {
  if (!(m.m00 > 0.0)) throw Error(ErrorCode::DegenerateRegion, "centroid needs m00 > 0");
  return Centroid{m.m10 / m.m00, m.m01 / m.m00};
}

Moments contour_moments_green(std::span<const Point> polygon) {
  if (polygon.size() < 3) {
    throw Error(ErrorCode::DegenerateContour, "Green's-formula moments need >= 3 vertices");
  }
  // Line integrals of the polygon edges, accumulated as scaled integers:
  // 2*m00, 6*m10, 6*m01, 12*m20, 24*m11, 12*m02.
  std::int64_t a2 = 0, s10 = 0, s01 = 0, s20 = 0, s11 = 0, s02 = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t x0 = polygon[i].x;
    const std::int64_t y0 = polygon[i].y;
    const std::int64_t x1 = polygon[(i + 1) % n].x;
    const std::int64_t y1 = polygon[(i + 1) % n].y;
    const std::int64_t cross = x0 * y1 - x1 * y0;
    a2 += cross;
    s10 += (x0 + x1) * cross;
    s01 += (y0 + y1) * cross;
    s20 += (x0 * x0 + x0 * x1 + x1 * x1) * cross;
    s11 += (x0 * y1 + 2 * x0 * y0 + 2 * x1 * y1 + x1 * y0) * cross;
    s02 += (y0 * y0 + y0 * y1 + y1 * y1) * cross;
  }
  if (a2 < 0) {
    a2 = -a2;
    s10 = -s10;
    s01 = -s01;
    s20 = -s20;
    s11 = -s11;
    s02 = -s02;
  }
  return Moments{static_cast<double>(a2) / 2.0,  static_cast<double>(s10) / 6.0,
                 static_cast<double>(s01) / 6.0,  static_cast<double>(s20) / 12.0,
                 static_cast<double>(s11) / 24.0, static_cast<double>(s02) / 12.0};
}

std::vector<Point> outline_polygon(const BinaryMask& mask, const Contour& region) {
  const std::vector<Point> pixels = region_pixels(mask, region);
  if (pixels.empty()) throw Error(ErrorCode::DegenerateRegion, "region has no pixels");
  Point start = pixels.front();
  for (const Point& p : pixels) {
    if (p.y < start.y || (p.y == start.y && p.x < start.x)) start = p;
  }

  // Headings E, S, W, N; the region stays on the right-hand side. The pixels
  // just ahead of corner (cx, cy) are given as offsets from that corner.
  constexpr std::array<int, 4> kStepX{1, 0, -1, 0};
  constexpr std::array<int, 4> kStepY{0, 1, 0, -1};
  constexpr std::array<Point, 4> kAheadLeft{Point{0, -1}, Point{0, 0}, Point{-1, 0},
                                            Point{-1, -1}};
  constexpr std::array<Point, 4> kAheadRight{Point{0, 0}, Point{-1, 0}, Point{-1, -1},
                                             Point{0, -1}};

  std::vector<Point> corners;
  Point corner = start;
  int heading = 0;
  corners.push_back(corner);
  corner = Point{corner.x + 1, corner.y};
  while (!(corner == start)) {
    const Point al = kAheadLeft[static_cast<std::size_t>(heading)];
    const Point ar = kAheadRight[static_cast<std::size_t>(heading)];
    int next = heading;
    if (mask.get_or_false(corner.x + al.x, corner.y + al.y)) {
      next = (heading + 3) % 4;
    } else if (!mask.get_or_false(corner.x + ar.x, corner.y + ar.y)) {
      next = (heading + 1) % 4;
    }
    if (next != heading) corners.push_back(corner);
    heading = next;
    corner = Point{corner.x + kStepX[static_cast<std::size_t>(heading)],
                   corner.y + kStepY[static_cast<std::size_t>(heading)]};
  }
  return corners;
}

Moments translated(const Moments& m, double dx, double dy) {
  return Moments{m.m00,
                 m.m10 + dx * m.m00,
                 m.m01 + dy * m.m00,
                 m.m20 + 2.0 * dx * m.m10 + dx * dx * m.m00,
                 m.m11 + dx * m.m01 + dy * m.m10 + dx * dy * m.m00,
                 m.m02 + 2.0 * dy * m.m01 + dy * dy * m.m00};
}

}  // namespace linefollow
