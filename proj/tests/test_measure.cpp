#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mediatrix/measure.hpp"

using namespace mediatrix;
using namespace mediatrix::measure;
namespace sf = mediatrix::surface;

TEST_CASE("box counting on reference sets") {
  std::vector<Vec2> segment;
  for (int i = 0; i < 20000; ++i) segment.push_back({0.3 + i * 1e-4, 0.1 + i * 0.5e-4});
  auto d = box_counting_dimension(segment, default_scales(2.0));
  CHECK(d.slope == doctest::Approx(1.0).epsilon(0.03));
  CHECK(d.scales.size() == 10);
  for (std::size_t i = 1; i < d.counts.size(); ++i) CHECK(d.counts[i] >= d.counts[i - 1]);

  std::vector<Vec2> square;
  for (int i = 0; i < 1000; ++i)
    for (int j = 0; j < 1000; ++j) square.push_back({i / 1000.0, j / 1000.0});
  auto e = box_counting_dimension(square, dyadic_scales(1.0, 2, 9), 1);
  CHECK(std::fabs(e.slope - 2.0) < 0.05);

  CHECK_THROWS_AS(box_counting_dimension(std::vector<Vec2>(100), default_scales(1.0)), InputError);
  CHECK_THROWS_AS(box_counting_dimension(segment, dyadic_scales(1.0, 0, 4)), InputError);
  CHECK_THROWS_AS(box_counting_dimension(segment, dyadic_scales(1.0, 0, 5)), InputError);
  CHECK_THROWS_AS(box_counting_dimension(segment, {1.0, 0.5, 0.6, 0.1, 0.01, 0.001}), InputError);
}

TEST_CASE("koch snowflake scenes") {
  CHECK(koch_polygon(0).size() == 3);
  CHECK(koch_polygon(2).size() == 48);
  CHECK_THROWS_AS(koch_scene(9), InputError);
  CHECK_THROWS_AS(koch_scene(-1), InputError);

  auto slope = [](int level) {
    auto s = koch_scene(level);
    auto pts = membership_boundary(s, 4096);
    return box_counting_dimension(pts, default_scales(std::max(s.hi.x - s.lo.x, s.hi.y - s.lo.y))).slope;
  };
  CHECK(slope(0) == doctest::Approx(1.0).epsilon(0.03));
  const double target = std::log(4.0) / std::log(3.0);
  double prev = 0.0;
  for (int level = 3; level <= 6; ++level) {
    double d = slope(level);
    CHECK(d > prev);
    prev = d;
  }
  CHECK(std::fabs(prev - target) < 0.04);

  auto s = koch_scene(3);
  auto p1 = membership_boundary(s, 1024);
  auto p2 = membership_boundary(swapped(s), 1024);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) CHECK(p1[i] == p2[i]);
}

TEST_CASE("comb scenes") {
  CHECK_THROWS_AS(comb_scene(1, 0.2), InputError);
  CHECK_THROWS_AS(comb_scene(4, 0.0), InputError);
  auto s = comb_scene(8, 0.2);
  REQUIRE(s.a.size() == 1);
  REQUIRE(s.b.size() == 1);
  // Every pair of A and B vertices is at least the gap apart.
  double closest = 1e9;
  for (const auto& p : s.a[0]) closest = std::min(closest, polygon_distance(s.b[0], p));
  for (const auto& p : s.b[0]) closest = std::min(closest, polygon_distance(s.a[0], p));
  CHECK(closest == doctest::Approx(0.2));

  auto pts = sign_change_points(s, 1024);
  auto d = box_counting_dimension(pts, feature_scales(0.2));
  CHECK(d.slope == doctest::Approx(1.0).epsilon(0.05));
  // Window-sized boxes see the meander as partly space-filling.
  auto coarse = box_counting_dimension(pts, default_scales(s.hi.x - s.lo.x));
  CHECK(coarse.slope > d.slope + 0.05);

  auto zig = comb_scene(2, 0.2);
  auto zp = sign_change_points(zig, 1024);
  CHECK(box_counting_dimension(zp, feature_scales(0.2)).slope == doctest::Approx(1.0).epsilon(0.05));
  // The swapped scene has the same zero set.
  auto zs = sign_change_points(swapped(zig), 1024);
  CHECK(zs.size() == zp.size());
}

TEST_CASE("hausdorff length of an empty complex is refused") {
  equidistant::EquidistantComplex c;
  CHECK_THROWS_AS(hausdorff_length(c), GeometryError);
  CHECK_THROWS_AS(dyadic_scales(-1.0, 0, 3), InputError);
}
