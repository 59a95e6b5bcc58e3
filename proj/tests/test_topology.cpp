#include <doctest.h>

#include <cmath>

#include "mediatrix/topology.hpp"
#include "oracles.hpp"

using namespace mediatrix;
using namespace mediatrix::metric;
using namespace mediatrix::equidistant;
using namespace mediatrix::topology;
namespace sf = mediatrix::surface;

namespace {

FocalSet points(std::vector<SurfacePoint> pts) {
  FocalSet k;
  k.points = std::move(pts);
  return k;
}

struct Run {
  ComplexTopology top;
  SideLabeling sides;
  CheckResult bound;
  CheckResult separating;
  double length = 0.0;
};

Run run_closed(const TriSurface& s, const FocalSet& a, const FocalSet& b, double h) {
  SampleSet ss(s);
  auto fa = distance_to_set(ss, a);
  auto fb = distance_to_set(ss, b);
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = h});
  Run r;
  r.top = cycle_rank(c);
  r.sides = side_labeling(c, focal_components(ss, a, 3 * h), focal_components(ss, b, 3 * h));
  r.bound = homology_bound_check(r.top, surface_h1_z2(s), r.sides);
  r.separating = minimal_separating_check(c, r.sides);
  r.length = c.total_length();
  return r;
}

}  // namespace

TEST_CASE("cycle rank of small graphs") {
  EquidistantComplex c;
  c.nodes.push_back({NodeKind::kLoopMarker, {}, 2, 0, {}});
  c.edges.push_back({0, 0, {}, {}, 1.0});
  auto t = cycle_rank(c);
  CHECK(t.V == 1);
  CHECK(t.Eg == 1);
  CHECK(t.C == 1);
  CHECK(t.beta1 == 1);

  EquidistantComplex star;
  star.nodes.push_back({NodeKind::kJunction, {}, 4, 0, {}});
  for (int i = 0; i < 4; ++i) {
    star.nodes.push_back({NodeKind::kWindowClipped, {}, 1, 0, {}});
    star.edges.push_back({0, i + 1, {}, {}, 1.0});
  }
  t = cycle_rank(star);
  CHECK(t.V == 5);
  CHECK(t.Eg == 4);
  CHECK(t.C == 1);
  CHECK(t.beta1 == 0);
  CHECK(t.degree_histogram.size() == 1);
  CHECK(t.degree_histogram[4] == 1);
  CHECK(t.even_degrees);

  // Two parallel edges between junctions plus a loop elsewhere.
  EquidistantComplex multi;
  multi.nodes.push_back({NodeKind::kJunction, {}, 3, 0, {}});
  multi.nodes.push_back({NodeKind::kJunction, {}, 3, 0, {}});
  multi.nodes.push_back({NodeKind::kLoopMarker, {}, 2, 0, {}});
  multi.edges.push_back({0, 1, {}, {}, 1.0});
  multi.edges.push_back({0, 1, {}, {}, 1.0});
  multi.edges.push_back({0, 1, {}, {}, 1.0});
  multi.edges.push_back({2, 2, {}, {}, 1.0});
  t = cycle_rank(multi);
  CHECK(t.C == 2);
  CHECK(t.beta1 == 3);
  CHECK_FALSE(t.even_degrees);
}

TEST_CASE("surface_h1_z2 from the Euler characteristic") {
  CHECK(surface_h1_z2(sf::sphere(1.0, 0.3)) == 0);
  CHECK(surface_h1_z2(sf::flat_torus(1.0, 0.2)) == 2);
  CHECK(surface_h1_z2(sf::doubled_disk(1.0, 0.2)) == 0);
  CHECK_THROWS_AS(surface_h1_z2(sf::flat_disk(1.0, 0.2)), InputError);
}

TEST_CASE("grid oracle on known configurations") {
  auto g = oracle::latlong_grid(120, 240);
  auto north = oracle::sphere_point(0.0, 0.0), south = oracle::sphere_point(kPi, 0.0);
  auto f = oracle::sample(g, [&](double t, double az) {
    auto x = oracle::sphere_point(t * kPi, az);
    return oracle::sphere_distance(x, north) - oracle::sphere_distance(x, south) + 1e-9;
  });
  auto t = oracle::closed_surface_topology(g, f, 0, 0.02);
  CHECK(t.beta1 == 1);
  CHECK(t.components == 2);
  CHECK(t.ell_a == 1);
  CHECK(t.ell_b == 1);

  // Flat torus, (0,0) against (1/2,1/2): the diamond with identified corners.
  auto tg = oracle::torus_grid(201);
  auto ft = oracle::sample(tg, [](double u, double v) {
    return oracle::torus_distance({u, v}, {0.0, 0.0}) - oracle::torus_distance({u, v}, {0.5, 0.5});
  });
  auto tt = oracle::closed_surface_topology(tg, ft, 2, 0.01, {true, true});
  CHECK(tt.beta1 == 3);
  CHECK(tt.ell_a == 1);
  CHECK(tt.ell_b == 1);
}

TEST_CASE("sphere antipodal: equator, bound at equality") {
  const double h = 0.1;
  auto s = sf::sphere(1.0, h);
  auto r = run_closed(s, points({locate(s, {0, 0, 1})}), points({locate(s, {0, 0, -1})}), h);
  CHECK(r.top.beta1 == 1);
  CHECK(r.top.C == 1);
  CHECK(r.bound.pass);
  CHECK(r.bound.bound == 1);
  CHECK(r.sides.ell_a == 1);
  CHECK(r.sides.ell_b == 1);
  CHECK(r.sides.complement_components == 2);
  CHECK(r.separating.pass);
  CHECK(r.length == doctest::Approx(kTwoPi).epsilon(0.03));
}

TEST_CASE("doubled disk centers: separating seam") {
  const double h = 0.08;
  auto s = sf::doubled_disk(1.0, h);
  SurfacePoint c0{}, c1{};
  for (int v = 0; v < s.num_vertices(); ++v)
    if (norm(s.positions()[v]) < 1e-12) (s.sheet()[v] == 0 ? c0 : c1) = vertex_point(s, v);
  auto r = run_closed(s, points({c0}), points({c1}), h);
  CHECK(r.top.beta1 == 1);
  CHECK(r.bound.pass);
  CHECK(r.sides.complement_components == 2);
  CHECK(r.separating.pass);
}

TEST_CASE("flat torus diagonal: beta1 matches the grid oracle") {
  const double h = 0.05;
  auto s = sf::flat_torus(1.0, h);
  auto r = run_closed(s, points({locate_uv(s, {0.0, 0.0})}), points({locate_uv(s, {0.5, 0.5})}), h);
  CHECK(r.top.beta1 == 3);
  CHECK(r.bound.bound == 3);
  CHECK(r.bound.pass);
  CHECK(r.top.even_degrees);
  CHECK(r.sides.complement_components == 2);
  CHECK(r.separating.pass);
}

TEST_CASE("sphere, one point against two") {
  const double h = 0.1;
  auto s = sf::sphere(1.0, h);
  auto n = oracle::sphere_point(0.0, 0.0);
  auto b1 = oracle::sphere_point(2.0, 0.3), b2 = oracle::sphere_point(2.4, 3.5);
  auto g = oracle::latlong_grid(120, 240);
  auto f = oracle::sample(g, [&](double t, double az) {
    auto x = oracle::sphere_point(t * kPi, az);
    return oracle::sphere_distance(x, n) -
           std::min(oracle::sphere_distance(x, b1), oracle::sphere_distance(x, b2));
  });
  auto expected = oracle::closed_surface_topology(g, f, 0, 0.02);
  auto r = run_closed(s, points({locate(s, n)}), points({locate(s, b1), locate(s, b2)}), h);
  CHECK(r.top.beta1 == expected.beta1);
  CHECK(r.sides.ell_a == expected.ell_a);
  CHECK(r.sides.ell_b == expected.ell_b);
  CHECK(r.sides.h0b == 2);
  CHECK(r.bound.bound == 2);
  CHECK(r.bound.pass);
  CHECK(r.separating.pass);
}

TEST_CASE("focal components join elements within the radius") {
  auto s = sf::flat_disk(2.0, 0.1);
  SampleSet ss(s);
  auto k = points({locate(s, {0, 0, 0}), locate(s, {0.2, 0, 0}), locate(s, {1.0, 0, 0})});
  CHECK(focal_components(ss, k, 0.3) == 2);
  CHECK(focal_components(ss, k, 0.1) == 3);
  CHECK(focal_components(ss, k, 1.0) == 1);
  CHECK_THROWS_AS(focal_components(ss, FocalSet{}, 0.1), InputError);
}

TEST_CASE("one-manifold check on planar windows") {
  const double h = 0.1;
  auto s = sf::flat_disk(2.0, h);
  SampleSet ss(s);
  auto fa = distance_to_set(ss, points({locate(s, {-1, 0, 0})}));
  auto fb = distance_to_set(ss, points({locate(s, {1, 0, 0})}));
  auto f = signed_field(fa, fb);
  auto c = extract_equidistant(f, {.h = h});
  auto r = one_manifold_check(c);
  CHECK(r.pass);
  CHECK_FALSE(r.inconclusive);

  auto fa2 = distance_to_set(ss, points({locate(s, {1, 0, 0}), locate(s, {-1, 0, 0})}));
  auto fb2 = distance_to_set(ss, points({locate(s, {0, 1, 0}), locate(s, {0, -1, 0})}));
  auto f2 = signed_field(fa2, fb2);
  auto c2 = extract_equidistant(f2, {.h = h});
  CHECK_FALSE(one_manifold_check(c2).pass);
  auto t = cycle_rank(c2);
  CHECK(t.V == 5);
  CHECK(t.Eg == 4);
  CHECK(t.beta1 == 0);
}
