#include <doctest.h>

#include <cmath>

#include "mediatrix/equidistant.hpp"

using namespace mediatrix;
using namespace mediatrix::metric;
using namespace mediatrix::equidistant;
namespace sf = mediatrix::surface;

namespace {

FocalSet points(std::initializer_list<SurfacePoint> pts) {
  FocalSet k;
  k.points = pts;
  return k;
}

int center_of_sheet(const TriSurface& s, int sheet) {
  for (int v = 0; v < s.num_vertices(); ++v)
    if (s.sheet()[v] == sheet && norm(s.positions()[v]) < 1e-12) return v;
  return -1;
}

// Largest angle between the edge tangent and the nearest wedge bisector over
// the sampled points that resolve cleanly.
double worst_residual(const EquidistantComplex& c, double h, int* tested) {
  double worst = 0.0;
  *tested = 0;
  for (const auto& sp : sample_edges(c, h, 3.0 * h)) {
    auto t = tangent_angle(c, sp.edge, sp.s, 3.0 * h);
    if (!t || near_cone_point(c.field->surface(), sp.where, 3.0 * h)) continue;
    std::pair<DirectionSet, DirectionSet> dirs;
    try {
      dirs = directions_at(c.field->a(), c.field->b(), sp.where, h);
    } catch (const ResolutionError&) {
      continue;
    }
    auto ws = wedges_at(sp.where, dirs.first, dirs.second, dirs.first.total_angle);
    double best = kPi;
    for (const auto& w : ws) best = std::min(best, bisector_residual(*t, w));
    worst = std::max(worst, best);
    ++*tested;
  }
  return worst;
}

}  // namespace

TEST_CASE("two points in the plane: one clipped chord") {
  auto s = sf::flat_disk(2.0, 0.1);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({locate(s, {-1, 0, 0})}));
  auto fb = distance_to_set(ss, points({locate(s, {1, 0, 0})}));
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = 0.1});
  REQUIRE(c.edges.size() == 1);
  CHECK(c.count(NodeKind::kWindowClipped) == 2);
  CHECK(c.count(NodeKind::kJunction) == 0);
  CHECK(c.total_length() == doctest::Approx(4.0).epsilon(0.02));
  for (const auto& x : c.crossings) CHECK(std::fabs(embed(s, x.where).x) < 1e-3);
  for (const auto& n : c.nodes) CHECK(n.degree == 1);

  int tested = 0;
  CHECK(worst_residual(c, 0.1, &tested) < 0.02);
  CHECK(tested > 10);

  SUBCASE("two-sided: nodes on either side of every crossing") {
    for (const auto& x : c.crossings) {
      CHECK(c.grid.values[x.lo] * c.grid.values[x.hi] < 0.0);
      CHECK(x.t >= 0.0);
      CHECK(x.t <= 1.0);
    }
  }
  SUBCASE("relabelling mirrors the complex exactly") {
    auto g = f.relabeled();
    auto c2 = extract_equidistant(g, {.h = 0.1});
    CHECK(c.same_as(c2));
    for (int i = 0; i < ss.size(); ++i) CHECK(g.at(i) == -f.at(i));
  }
}

TEST_CASE("focal sets closer than 10h are refused") {
  auto s = sf::flat_disk(2.0, 0.1);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({locate(s, {-0.3, 0, 0})}));
  auto fb = distance_to_set(ss, points({locate(s, {0.3, 0, 0})}));
  auto f = signed_field(fa, fb);
  CHECK(focal_separation(fa, fb) == doctest::Approx(0.6));
  CHECK_THROWS_AS(extract_equidistant(f, {.h = 0.1}), GeometryError);
  CHECK_NOTHROW(extract_equidistant(f, {.h = 0.1, .enforce_separation = false}));
  SampleSet other(s);
  auto fo = distance_to_set(other, points({locate(s, {0.3, 0, 0})}));
  CHECK_THROWS_AS(signed_field(fa, fo), InputError);
}

TEST_CASE("doubled disk centers: the seam loop") {
  const double h = 0.08;
  auto s = sf::doubled_disk(1.0, h);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({vertex_point(s, center_of_sheet(s, 0))}));
  auto fb = distance_to_set(ss, points({vertex_point(s, center_of_sheet(s, 1))}));
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = h});
  REQUIRE(c.edges.size() == 1);
  CHECK(c.count(NodeKind::kLoopMarker) == 1);
  CHECK(c.nodes[0].degree == 2);
  for (const auto& x : c.crossings) CHECK(std::fabs(norm(embed(s, x.where)) - 1.0) < 2.0 * h);
  CHECK(c.total_length() == doctest::Approx(kTwoPi).epsilon(0.02));
  CHECK(c.same_as(extract_equidistant(f.relabeled(), {.h = h})));

  // Every loop point is a seam point: each side sees one direction.
  int tested = 0;
  CHECK(worst_residual(c, h, &tested) < 0.1);
  CHECK(tested > 20);
}

TEST_CASE("square configuration: one junction of degree four") {
  const double h = 0.1;
  auto s = sf::flat_disk(2.0, h);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({locate(s, {1, 0, 0}), locate(s, {-1, 0, 0})}));
  auto fb = distance_to_set(ss, points({locate(s, {0, 1, 0}), locate(s, {0, -1, 0})}));
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = h});
  REQUIRE(c.count(NodeKind::kJunction) == 1);
  CHECK(c.count(NodeKind::kWindowClipped) == 4);
  CHECK(c.edges.size() == 4);
  for (const auto& n : c.nodes) {
    if (n.kind == NodeKind::kJunction) {
      CHECK(n.degree == 4);
      CHECK(norm(embed(s, n.where)) < 0.5 * h);
    }
  }
  // Diagonals |x| = |y| clipped by the disk of radius 2.
  CHECK(c.total_length() == doctest::Approx(8.0).epsilon(0.02));
  CHECK(c.same_as(extract_equidistant(f.relabeled(), {.h = h})));

  int tested = 0;
  CHECK(worst_residual(c, h, &tested) < 0.05);
  CHECK(tested > 20);
}

TEST_CASE("wedge widths and predicted angles") {
  auto dirs = [](std::initializer_list<double> angles, int tag) {
    DirectionSet d;
    for (double a : angles) d.directions.push_back({a, tag, 1.0, {}, 0.0, -1});
    return d;
  };
  SurfacePoint x{0, {}};
  SUBCASE("plane, square configuration") {
    auto ws = wedges_at(x, dirs({0.0, kPi}, 0), dirs({kPi / 2, 3 * kPi / 2}, 1), kTwoPi);
    REQUIRE(ws.size() == 4);
    for (const auto& w : ws) {
      CHECK(w.width == doctest::Approx(kPi / 2));
      CHECK(w.predicted == doctest::Approx(kPi / 4));
      CHECK_FALSE(w.obtuse);
    }
    CHECK(ws[0].bisector == doctest::Approx(kPi / 4));
  }
  SUBCASE("plane, two points") {
    auto ws = wedges_at(x, dirs({kPi}, 0), dirs({0.0}, 1), kTwoPi);
    REQUIRE(ws.size() == 2);
    CHECK(ws[0].width == doctest::Approx(kPi));
    CHECK(ws[0].predicted == doctest::Approx(kPi / 2));
    CHECK(ws[0].bisector == doctest::Approx(kPi / 2));
    CHECK(ws[1].bisector == doctest::Approx(3 * kPi / 2));
  }
  SUBCASE("cone of angle 3pi/2") {
    const double theta = 1.5 * kPi;
    auto ws = wedges_at(x, dirs({0.0}, 0), dirs({kPi / 2}, 1), theta);
    REQUIRE(ws.size() == 2);
    CHECK(ws[0].width == doctest::Approx(kPi / 2));
    CHECK_FALSE(ws[0].obtuse);
    CHECK(ws[0].predicted == doctest::Approx(kPi / 4));
    CHECK(ws[1].width == doctest::Approx(kPi));
    CHECK(ws[1].obtuse);
    CHECK(ws[1].predicted == doctest::Approx(kPi / 4));
  }
  CHECK_THROWS_AS(wedges_at(x, dirs({0.0}, 0), DirectionSet{}, kTwoPi), InputError);
  CHECK_THROWS_AS(wedges_at(x, dirs({0.0}, 0), dirs({1.0}, 1), 0.0), InputError);
  Wedge w;
  w.bisector = kPi / 2;
  CHECK(bisector_residual(3 * kPi / 2, w) == doctest::Approx(0.0));
  CHECK(bisector_residual(kPi / 2 + 0.1, w) == doctest::Approx(0.1));
}

TEST_CASE("cone of angle 3pi/2: equidistant set of two points") {
  const double theta = 1.5 * kPi, h = 0.05;
  auto s = sf::cone(theta, 1.0, h);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({locate_uv(s, {0.6, 0.0})}));
  auto fb = distance_to_set(ss, points({locate_uv(s, {0.6, theta / 2})}));
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = h});
  // Two rays from the apex: the bisecting directions phi = 3pi/8 and 9pi/8.
  CHECK(c.count(NodeKind::kJunction) <= 1);
  CHECK(c.total_length() == doctest::Approx(2.0).epsilon(0.05));
  int tested = 0;
  CHECK(worst_residual(c, h, &tested) < 0.05);
  CHECK(tested > 10);
}
