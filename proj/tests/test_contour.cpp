#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "linefollow/contour.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace linefollow;

namespace {

Contour only_outer(const std::vector<Contour>& cs) {
  REQUIRE(cs.size() == 1);
  REQUIRE(cs[0].is_outer);
  return cs[0];
}

std::set<Point> as_set(const std::vector<Point>& pts) { return {pts.begin(), pts.end()}; }

}  // namespace

TEST_CASE("empty mask has no contours") {
  CHECK(trace_contours(BinaryMask(8, 8)).empty());
}

TEST_CASE("single pixel is its own border") {
  BinaryMask m(8, 8);
  m.set(3, 4, true);
  const Contour c = only_outer(trace_contours(m));
  CHECK(c.points == std::vector<Point>{{3, 4}});
  CHECK_FALSE(c.parent.has_value());
}

TEST_CASE("filled square border has 36 pixels traced counterclockwise") {
  const BinaryMask m = oracle::filled_rect(14, 14, 2, 2, 11, 11);
  const Contour c = only_outer(trace_contours(m));
  CHECK(c.points.size() == 36);
  CHECK(as_set(c.points) == oracle::boundary_pixels(m));
  CHECK(c.points[0] == Point{2, 2});
  CHECK(c.points[1] == Point{2, 3});
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const Point a = c.points[i], b = c.points[(i + 1) % c.points.size()];
    CHECK(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) == 1);
  }
}

TEST_CASE("frame-edge pixels are border pixels") {
  const BinaryMask full(5, 4, true);
  const Contour c = only_outer(trace_contours(full));
  CHECK(as_set(c.points) == oracle::boundary_pixels(full));
  CHECK(c.points.size() == 14);
}

TEST_CASE("ring yields an outer border and a hole border") {
  BinaryMask m = oracle::filled_rect(12, 12, 1, 1, 9, 9);
  for (int y = 4; y <= 6; ++y)
    for (int x = 4; x <= 6; ++x) m.set(x, y, false);
  m.set(5, 5, true);  // island inside the hole
  const auto cs = trace_contours(m);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].is_outer);
  CHECK_FALSE(cs[1].is_outer);
  CHECK(cs[1].parent == std::optional<std::size_t>{0});
  CHECK(cs[2].is_outer);
  CHECK(cs[2].parent == std::optional<std::size_t>{1});
  CHECK(cs[2].points == std::vector<Point>{{5, 5}});
  std::set<Point> traced;
  for (const Contour& c : cs) traced.insert(c.points.begin(), c.points.end());
  CHECK(traced == oracle::boundary_pixels(m));
}

TEST_CASE("diagonal pixels form one 8-connected component") {
  BinaryMask m(6, 6);
  for (int i = 0; i < 6; ++i) m.set(i, i, true);
  const Contour c = only_outer(trace_contours(m));
  CHECK(as_set(c.points).size() == 6);
}

TEST_CASE("random masks match the boundary and flood-fill oracles") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask m = oracle::random_mask(rng, 24, 20, 0.2 + 0.6 * (trial % 5) / 4.0);
    const auto cs = trace_contours(m);
    const oracle::Components comp = oracle::label_components(m);
    std::map<int, std::set<Point>> per_component;
    int outers = 0;
    for (const Contour& c : cs) {
      REQUIRE_FALSE(c.points.empty());
      const int id = comp.at(c.points[0].x, c.points[0].y);
      for (const Point& p : c.points) REQUIRE(comp.at(p.x, p.y) == id);
      per_component[id].insert(c.points.begin(), c.points.end());
      if (c.is_outer) ++outers;
    }
    CHECK(outers == comp.count);
    std::map<int, std::set<Point>> expected;
    for (const Point& p : oracle::boundary_pixels(m)) expected[comp.at(p.x, p.y)].insert(p);
    CHECK(per_component == expected);
  }
}

TEST_CASE("path selection picks the largest filled region") {
  BinaryMask m(40, 20);
  for (int y = 2; y < 12; ++y)
    for (int x = 2; x < 12; ++x) m.set(x, y, true);
  for (int y = 15; y < 18; ++y)
    for (int x = 30; x < 33; ++x) m.set(x, y, true);
  const auto cs = trace_contours(m);
  const auto best = select_path_contour(m, cs, {0.0});
  REQUIRE(best.has_value());
  CHECK(region_moments(m, *best).m00 == 100.0);

  CHECK_FALSE(select_path_contour(m, std::vector<Contour>{}).has_value());
  CHECK_FALSE(select_path_contour(m, cs, {101.0}).has_value());
  CHECK(select_path_contour(m, cs, {100.0}).has_value());
}

TEST_CASE("path band wins over an ambiguous blob") {
  BinaryMask m(160, 120);
  for (int y = 0; y < 120; ++y)
    for (int x = 70; x < 104; ++x) m.set(x, y, true);  // about 4000 px
  for (int y = 10; y < 25; ++y)
    for (int x = 10; x < 30; ++x) m.set(x, y, true);  // 300 px
  const auto cs = trace_contours(m);
  REQUIRE(cs.size() == 2);
  const auto best = select_path_contour(m, cs);
  REQUIRE(best.has_value());
  CHECK(region_moments(m, *best).m00 == 120.0 * 34.0);
}

TEST_CASE("equal areas resolve to the earliest contour") {
  BinaryMask m(20, 10);
  for (int y = 1; y < 4; ++y)
    for (int x = 1; x < 4; ++x) m.set(x, y, true), m.set(x + 10, y + 4, true);
  const auto cs = trace_contours(m);
  const auto best = select_path_contour(m, cs, {0.0});
  REQUIRE(best.has_value());
  CHECK(best->points == cs[0].points);
}

TEST_CASE("hole area is excluded from the filled region") {
  BinaryMask m = oracle::filled_rect(10, 10, 0, 0, 9, 9);
  m.set(5, 5, false);
  const auto cs = trace_contours(m);
  const Contour& outer = cs.at(0);
  CHECK(region_moments(m, outer).m00 == 99.0);
  CHECK(region_pixels(m, outer).size() == 99);
}

TEST_CASE("moment examples") {
  BinaryMask one(8, 8);
  one.set(3, 4, true);
  const Moments a = region_moments(one, trace_contours(one).at(0));
  CHECK(a.m00 == 1.0);
  CHECK(a.m10 == 3.0);
  CHECK(a.m01 == 4.0);
  const CentralMoments ca = central_moments(a);
  CHECK(ca.mu20 == 0.0);
  CHECK(ca.mu11 == 0.0);
  CHECK(ca.mu02 == 0.0);

  const BinaryMask sq = oracle::filled_rect(4, 4, 0, 0, 1, 1);
  const Moments b = region_moments(sq, trace_contours(sq).at(0));
  CHECK(b.m00 == 4.0);
  CHECK(b.m10 == 2.0);
  CHECK(b.m01 == 2.0);
  CHECK(centroid(b).x == 0.5);
  CHECK(centroid(b).y == 0.5);

  const BinaryMask strip = oracle::filled_rect(4, 4, 0, 0, 2, 0);
  const CentralMoments cs = central_moments(region_moments(strip, trace_contours(strip).at(0)));
  CHECK(cs.mu20 == 2.0);
  CHECK(cs.mu02 == 0.0);
  CHECK(cs.mu11 == 0.0);

  CHECK_ERROR_CODE(central_moments(Moments{}), ErrorCode::DegenerateRegion);
  CHECK_ERROR_CODE(centroid(Moments{}), ErrorCode::DegenerateRegion);
}

TEST_CASE("region moments equal naive summation on random blobs") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMask m = oracle::random_blobs(rng, 48, 40, 1 + trial % 4);
    const oracle::Components comp = oracle::label_components(m);
    for (const Contour& c : trace_contours(m)) {
      if (!c.is_outer) continue;
      const int id = comp.at(c.points[0].x, c.points[0].y);
      CHECK(oracle::equal(oracle::naive_moments(comp, m.height(), id), region_moments(m, c)));
    }
  }
}

TEST_CASE("central moments are translation invariant") {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask m = oracle::random_blobs(rng, 30, 30, 2);
    BinaryMask shifted(40, 40);
    for (int y = 0; y < 30; ++y)
      for (int x = 0; x < 30; ++x) shifted.set(x + 5, y + 7, m.at(x, y));
    const auto a = trace_contours(m);
    const auto b = trace_contours(shifted);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_outer) continue;
      CHECK(central_moments(region_moments(m, a[i])) ==
            central_moments(region_moments(shifted, b[i])));
    }
  }
}

TEST_CASE("rectangle centroids are exact and centroids lie in the bounding box") {
  std::mt19937_64 rng(79);
  std::uniform_int_distribution<int> coord(0, 39);
  for (int trial = 0; trial < 200; ++trial) {
    int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    const BinaryMask m = oracle::filled_rect(40, 40, x0, y0, x1, y1);
    const Centroid c = centroid(region_moments(m, trace_contours(m).at(0)));
    CHECK(c.x == (x0 + x1) / 2.0);
    CHECK(c.y == (y0 + y1) / 2.0);
  }
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask m = oracle::random_blobs(rng, 40, 40, 3);
    for (const Contour& c : trace_contours(m)) {
      if (!c.is_outer) continue;
      const auto px = region_pixels(m, c);
      const auto [xmin, xmax] = std::minmax_element(px.begin(), px.end(),
                                                    [](Point a, Point b) { return a.x < b.x; });
      const auto [ymin, ymax] = std::minmax_element(px.begin(), px.end(),
                                                    [](Point a, Point b) { return a.y < b.y; });
      const Centroid g = centroid(region_moments(m, c));
      CHECK(g.x >= xmin->x);
      CHECK(g.x <= xmax->x);
      CHECK(g.y >= ymin->y);
      CHECK(g.y <= ymax->y);
    }
  }
  const BinaryMask disk = oracle::filled_disk(40, 40, 17.3, 21.6, 9.0);
  const Centroid g = centroid(region_moments(disk, trace_contours(disk).at(0)));
  CHECK(disk.at(static_cast<int>(std::lround(g.x)), static_cast<int>(std::lround(g.y))));
}

TEST_CASE("polygon moments by Green's theorem") {
  std::vector<Point> square{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const Moments m = contour_moments_green(square);
  CHECK(m.m00 == 100.0);
  CHECK(centroid(m).x == 5.0);
  CHECK(centroid(m).y == 5.0);
  CHECK(m.m20 == doctest::Approx(10000.0 / 3.0));
  CHECK(m.m11 == doctest::Approx(2500.0));

  std::vector<Point> reversed(square.rbegin(), square.rend());
  CHECK(contour_moments_green(reversed) == m);
  std::rotate(square.begin(), square.begin() + 2, square.end());
  CHECK(contour_moments_green(square) == m);

  CHECK_ERROR_CODE(contour_moments_green(std::vector<Point>{{0, 0}, {1, 1}}),
                   ErrorCode::DegenerateContour);
}

TEST_CASE("Green moments are invariant under reversal and rotation of traced contours") {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask m = oracle::random_blobs(rng, 40, 40, 2);
    for (const Contour& c : trace_contours(m)) {
      if (c.points.size() < 3) continue;
      const Moments base = contour_moments_green(c);
      std::vector<Point> pts = c.points;
      std::reverse(pts.begin(), pts.end());
      CHECK(contour_moments_green(pts) == base);
      std::rotate(pts.begin(), pts.begin() + static_cast<long>(pts.size() / 3), pts.end());
      CHECK(contour_moments_green(pts) == base);
    }
  }
}

TEST_CASE("pixel-edge outline encloses exactly the component's pixels") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMask m = oracle::random_blobs(rng, 36, 30, 1 + trial % 3);
    const auto cs = trace_contours(m);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const Contour& c = cs[i];
      if (!c.is_outer) continue;
      const Moments region = region_moments(m, c);
      const auto outline = outline_polygon(m, c);
      REQUIRE(outline.size() >= 4);
      const Moments green = translated(contour_moments_green(outline), -0.5, -0.5);
      // Holes inside the outline count towards the polygon but not the region.
      const bool has_hole = std::any_of(cs.begin(), cs.end(), [&](const Contour& h) {
        return !h.is_outer && h.parent == std::optional<std::size_t>{i};
      });
      if (!has_hole) {
        CHECK(green.m00 == region.m00);
        CHECK(green.m10 == doctest::Approx(region.m10).epsilon(1e-12));
        CHECK(green.m01 == doctest::Approx(region.m01).epsilon(1e-12));
      } else {
        CHECK(green.m00 > region.m00);
      }
    }
  }
}

TEST_CASE("disk areas agree between Green's formula and pixel counts") {
  for (double r = 10.0; r <= 30.0; r += 2.5) {
    const BinaryMask m = oracle::filled_disk(80, 80, 40.2, 39.7, r);
    const Contour c = only_outer(trace_contours(m));
    const double pixels = region_moments(m, c).m00;
    const double outline = contour_moments_green(outline_polygon(m, c)).m00;
    CHECK(outline == pixels);
    // Polygon through pixel centres undercounts by about half the perimeter.
    const double centres = contour_moments_green(c).m00;
    CHECK(centres < pixels);
    CHECK(centres > 0.85 * pixels);
  }
}

TEST_CASE("translated moments") {
  const Moments m{2.0, 4.0, 6.0, 10.0, 12.0, 20.0};
  const Moments t = translated(m, 1.0, -1.0);
  CHECK(t.m00 == 2.0);
  CHECK(t.m10 == 6.0);
  CHECK(t.m01 == 4.0);
  CHECK(t.m20 == 10.0 + 2.0 * 4.0 + 2.0);
  CHECK(t.m02 == 20.0 - 2.0 * 6.0 + 2.0);
  CHECK(t.m11 == 12.0 - 4.0 + 6.0 - 2.0);
  CHECK(translated(t, -1.0, 1.0) == m);
}
