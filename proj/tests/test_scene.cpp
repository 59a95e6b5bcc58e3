#include <doctest.h>

#include <algorithm>
#include <set>

#include "mediatrix/metric_engine.hpp"
#include "mediatrix/rng.hpp"
#include "mediatrix/scene.hpp"

using namespace mediatrix;
using namespace mediatrix::scene;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "id": "mini",
  "surface": {"generator": "flat_disk", "params": {"radius": 1.5}},
  "a": {"points": [[-0.6, 0, 0]]},
  "b": {"points": [[0.6, 0, 0]]},
  "h": 0.05,
  "checks": ["validate", "length"]
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kMinimal;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("counter rng is a pure function of seed, stream and counter") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(CounterRng(7, 3).at(5) == CounterRng(7, 3).at(5));
  CHECK(CounterRng(7, 3).at(5) != c.at(5));
  CHECK(CounterRng(7, 3).at(5) != d.at(5));
}

TEST_CASE("minimal scene parses with defaults") {
  auto s = parse_scene(kMinimal);
  CHECK(s.id == "mini");
  CHECK(s.kind == SceneKind::kSurface);
  CHECK(s.steiner == 3);
  CHECK(s.h == doctest::Approx(0.05));
  CHECK(s.a.points.size() == 1);
  CHECK(s.tol.min_wedge_samples == 200);
}

TEST_CASE("strict parsing rejects malformed scenes") {
  CHECK_THROWS_AS(parse_scene(with("\"version\": 1", "\"version\": 2")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"h\": 0.05", "\"h\": 0.05, \"colour\": 1")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"h\": 0.05,", "")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"length\"", "\"lenght\"")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"radius\": 1.5", "\"radius\": 1.5, \"sides\": 3")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"flat_disk\"", "\"klein_bottle\"")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"h\": 0.05", "\"h\": 0.05, \"steiner\": 0")), InputError);
  CHECK_THROWS_AS(parse_scene(with("\"a\": {\"points\": [[-0.6, 0, 0]]}", "\"a\": {\"pionts\": []}")), InputError);
  CHECK_THROWS_AS(parse_scene("{ not json"), InputError);
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), InputError);
}

TEST_CASE("builtins round-trip through the canonical dump") {
  auto names = builtin_scenes();
  names.push_back("bell-3");
  for (const auto& n : names) {
    CAPTURE(n);
    auto s = builtin_scene(n, 11);
    auto text = dump_scene(s);
    auto back = parse_scene(text);
    CHECK(dump_scene(back) == text);
    CHECK(scene_hash(back) == scene_hash(s));
  }
  CHECK_THROWS_AS(builtin_scene("no-such-scene"), InputError);
}

TEST_CASE("scene hash follows content") {
  auto a = builtin_scene("torus-diagonal");
  auto b = builtin_scene("torus-diagonal");
  CHECK(scene_hash(a) == scene_hash(b));
  b.h = 0.025;
  CHECK(scene_hash(a) != scene_hash(b));
  CHECK(hex64(0x1234) == "0000000000001234");
}

TEST_CASE("bell scenes are seeded and keep their sets apart") {
  std::set<std::uint64_t> hashes;
  for (int i = 0; i < 20; ++i) {
    auto s = bell_scene(5, i);
    CHECK(scene_hash(s) == scene_hash(bell_scene(5, i)));
    hashes.insert(scene_hash(s));
    REQUIRE(s.a.polygons.size() == 1);
    REQUIRE(s.b.polygons.size() == 1);
    double gap = 1e9;
    for (Vec2 p : s.a.polygons[0]) gap = std::min(gap, measure::polygon_distance(s.b.polygons[0], p));
    for (Vec2 p : s.b.polygons[0]) gap = std::min(gap, measure::polygon_distance(s.a.polygons[0], p));
    CHECK(gap > s.tol.min_separation_factor * s.h);
    for (const auto& poly : {s.a.polygons[0], s.b.polygons[0]})
      for (Vec2 p : poly) {
        CHECK(p.x > 0.0);
        CHECK(p.x < 4.0);
        CHECK(p.y > 0.0);
        CHECK(p.y < 3.0);
      }
  }
  CHECK(hashes.size() == 20);
  CHECK(scene_hash(bell_scene(5, 0)) != scene_hash(bell_scene(6, 0)));
}

TEST_CASE("focal descriptors resolve onto the samples") {
  auto spec = builtin_scene("doubled-disk-centers");
  spec.h = 0.1;
  auto s = load_surface(spec);
  metric::SampleSet ss(s, spec.steiner);
  auto ka = resolve_focal(ss, spec.a, 0.2), kb = resolve_focal(ss, spec.b, 0.2);
  REQUIRE(ka.points.size() == 1);
  REQUIRE(kb.points.size() == 1);
  auto sheet_of = [&](int f) {
    const auto& c = s.face(f);
    return std::max({s.sheet()[c[0]], s.sheet()[c[1]], s.sheet()[c[2]]});
  };
  CHECK(sheet_of(ka.points[0].face) == 0);
  CHECK(sheet_of(kb.points[0].face) == 1);
  CHECK(metric::embed(s, ka.points[0]).x == doctest::Approx(0.0).epsilon(1e-9));

  auto bell = bell_scene(0, 0);
  auto bs = load_surface(bell, 0.1);
  metric::SampleSet bss(bs, 3);
  auto kr = resolve_focal(bss, bell.a, 0.2);
  CHECK(kr.points.empty());
  REQUIRE(!kr.seeds.empty());
  for (const auto& seed : kr.seeds) {
    CHECK(seed.dist >= 0.0);
    CHECK(seed.dist <= 0.2);
    Vec3 p = metric::embed(bs, bss.location(seed.sample));
    double exact = measure::inside(bell.a.polygons[0], {p.x, p.y}) ? 0.0
                                                                    : measure::polygon_distance(bell.a.polygons[0], {p.x, p.y});
    CHECK(seed.dist == doctest::Approx(exact).epsilon(1e-9));
  }

  FocalDesc empty;
  CHECK_THROWS_AS(resolve_focal(ss, empty, 0.2), InputError);
  FocalDesc poly;
  poly.polygons.push_back({{0, 0}, {0.1, 0}, {0, 0.1}});
  CHECK_THROWS_AS(resolve_focal(ss, poly, 0.2), InputError);
}
