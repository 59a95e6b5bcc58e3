#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "mediatrix/pipeline.hpp"
#include "oracles.hpp"

using namespace mediatrix;
using namespace mediatrix::pipeline;

namespace {

const Verdict* find(const SceneResult& r, const std::string& check) {
  for (const auto& v : r.verdicts)
    if (v.check == check) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("line scene reports its intervals") {
  auto r = run_scene(scene::builtin_scene("line-d2"));
  CHECK(r.pass());
  REQUIRE(r.intervals.size() == 3);
  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["intervals"].size() == 3);
  CHECK(j["intervals"][1]["lo"].get<double>() == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(j["checks"][0]["check"] == "line_intervals");
  CHECK(j["checks"][0]["scene"] == "line-d2");
  CHECK_FALSE(j.contains("extraction"));
}

TEST_CASE("torus with two points against one") {
  auto spec = scene::builtin_scene("torus-two-vs-one");
  auto r = run_scene(spec);
  CHECK(r.pass());
  REQUIRE(r.stats);
  // Dense-grid oracle, frozen.
  CHECK(r.stats->beta1 == 2);
  CHECK(oracle::closed_scene_beta1("torus-two-vs-one") == 2);
  REQUIRE(find(r, "homology_bound"));
  CHECK(find(r, "homology_bound")->pass);
}

TEST_CASE("reports are byte-identical across runs") {
  auto spec = scene::builtin_scene("pillowcase");
  auto a = report_json(run_scene(spec));
  auto b = report_json(run_scene(spec));
  CHECK(a == b);
  CHECK(a.find("time") == std::string::npos);
  auto j = nlohmann::json::parse(a);
  CHECK(j["hash"] == scene::hex64(scene::scene_hash(spec)));
  CHECK(j["extraction"]["beta1"] == 1);
}

TEST_CASE("overrides change the hash and the checks") {
  auto spec = scene::builtin_scene("pillowcase");
  RunOptions opt;
  opt.checks = {"length"};
  opt.seed = 9;
  auto r = run_scene(spec, opt);
  REQUIRE(r.verdicts.size() == 1);
  CHECK(r.verdicts[0].check == "length");
  CHECK(r.hash != scene::hex64(scene::scene_hash(spec)));
  opt.checks = {"nonsense"};
  CHECK_THROWS_AS(run_scene(spec, opt), InputError);
}

TEST_CASE("validator expectation and the cbb gate") {
  auto spec = scene::builtin_scene("sqrt-horn");
  spec.checks = {"validate"};
  RunOptions opt;
  opt.require_cbb = true;
  auto r = run_scene(spec, opt);
  CHECK(r.aborted);
  CHECK_FALSE(r.pass());
  REQUIRE(r.validation);
  CHECK_FALSE(r.validation->failures.empty());
  CHECK(r.polylines.empty());
}

TEST_CASE("extraction refusal surfaces as a geometry error") {
  auto spec = scene::builtin_scene("plane-two-points");
  spec.a.points = {{-0.05, 0, 0}};
  spec.b.points = {{0.05, 0, 0}};
  spec.h = 0.05;
  spec.checks = {"length"};
  CHECK_THROWS_AS(run_scene(spec), GeometryError);
}

TEST_CASE("bell scenes agree with the grid sign-change oracle") {
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    auto spec = scene::bell_scene(0, i);
    auto r = run_scene(spec);
    CHECK(r.pass());
    auto o = oracle::planar_signs(spec.a.polygons[0], spec.b.polygons[0], 4.0, 3.0, 400);
    CHECK(o.zero_components == 1);
    CHECK(o.negative == 1);
    CHECK(o.positive == 1);
    CHECK(o.window_crossings == 2);
    REQUIRE(r.stats);
    CHECK(r.stats->C == 1);
    CHECK(r.stats->window_clipped == o.window_crossings);
    // Every oracle zero lies near the extracted polyline.
    double worst = 0.0;
    for (Vec2 z : o.zeros) {
      double best = 1e9;
      for (const auto& line : r.polylines)
        for (std::size_t k = 0; k + 1 < line.size(); ++k)
          best = std::min(best, oracle::segment_distance(z, {line[k].x, line[k].y}, {line[k + 1].x, line[k + 1].y}));
      worst = std::max(worst, best);
    }
    CHECK(worst < spec.h);
  }
}

TEST_CASE("koch membership scene") {
  auto r = run_scene(scene::builtin_scene("koch-6"));
  CHECK(r.pass());
  REQUIRE(r.dimension);
  CHECK(r.dimension->slope == doctest::Approx(std::log(4.0) / std::log(3.0)).epsilon(0.03));
  auto csv = export_boxcount_csv(r);
  CHECK(csv.rfind("scale,count", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.dimension->scales.size()) + 1);
}

TEST_CASE("exports") {
  auto r = run_scene(scene::builtin_scene("sphere-one-vs-two"));
  auto obj = export_obj(r);
  CHECK(obj.find("\nv ") != std::string::npos);
  CHECK(obj.find("\nl ") != std::string::npos);
  auto svg = export_svg(r);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("suites") {
  CHECK(suite_names().size() == 6);
  CHECK(suite_scenes("planar-bell").size() == 20);
  CHECK(suite_scenes("homology").size() >= 6);
  CHECK_THROWS_AS(suite_scenes("everything"), InputError);
  auto s = run_suite("homology", 0, 2);
  CHECK(s.errors.empty());
  CHECK(s.pass());
  CHECK(s.scenes[0].spec.id == "doubled-disk-centers");
  auto j = nlohmann::json::parse(suite_json(s));
  CHECK(j["passed"] == static_cast<int>(s.scenes.size()));
}
