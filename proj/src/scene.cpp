#include "mediatrix/scene.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mediatrix/rng.hpp"

namespace mediatrix::scene {

using nlohmann::json;

const char* to_string(SceneKind k) {
  switch (k) {
    case SceneKind::kSurface: return "surface";
    case SceneKind::kPlanar: return "planar";
    case SceneKind::kLine: return "line";
  }
  return "?";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "validate",        "beta1",            "homology_bound",   "minimal_separating", "one_manifold", "bisector",
      "derivative",      "wedge_parity",     "strict_negativity",  "relabel",      "length",
      "length_stability", "reference_circle", "dimension",          "line_intervals"};
  return names;
}

namespace {

// Allowed parameter names per generator.
const std::map<std::string, std::set<std::string>>& generator_params() {
  static const std::map<std::string, std::set<std::string>> p{
      {"flat_disk", {"radius"}},           {"flat_square", {"side"}}, {"flat_rectangle", {"width", "height"}},
      {"sphere", {"radius"}},              {"flat_torus", {"side"}},  {"cone", {"angle", "radius"}},
      {"doubled_disk", {"radius"}},        {"pillowcase", {"side"}},  {"sqrt_horn", {}}};
  return p;
}

void allow_only(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* key : keys) ok = ok || k == key;
    if (!ok) throw InputError(where + ": unknown field '" + k + "'");
  }
}

Vec2 vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Vec3 vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json to_json(Vec2 v) { return json::array({v.x, v.y}); }
json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

FocalDesc parse_focal(const json& j, const std::string& where) {
  allow_only(j, {"vertices", "points", "sheet", "uv", "polygons"}, where);
  FocalDesc d;
  if (j.contains("vertices")) d.vertices = j["vertices"].get<std::vector<int>>();
  if (j.contains("points"))
    for (const auto& p : j["points"]) d.points.push_back(vec3(p));
  if (j.contains("sheet")) d.sheet = j["sheet"].get<int>();
  if (j.contains("uv"))
    for (const auto& p : j["uv"]) d.uv.push_back(vec2(p));
  if (j.contains("polygons"))
    for (const auto& poly : j["polygons"]) {
      measure::Polygon p;
      for (const auto& v : poly) p.push_back(vec2(v));
      if (p.size() < 3) throw InputError(where + ": polygon with fewer than 3 vertices");
      d.polygons.push_back(std::move(p));
    }
  if (d.empty()) throw InputError(where + ": empty focal set");
  return d;
}

json focal_json(const FocalDesc& d) {
  json j;
  j["vertices"] = d.vertices;
  j["points"] = json::array();
  for (auto p : d.points) j["points"].push_back(to_json(p));
  j["sheet"] = d.sheet;
  j["uv"] = json::array();
  for (auto p : d.uv) j["uv"].push_back(to_json(p));
  j["polygons"] = json::array();
  for (const auto& poly : d.polygons) {
    json pj = json::array();
    for (auto v : poly) pj.push_back(to_json(v));
    j["polygons"].push_back(pj);
  }
  return j;
}

SceneSpec parse_json(const json& j) {
  allow_only(j, {"version", "id", "kind", "surface", "a", "b", "h", "steiner", "seed", "checks", "expect",
                 "tolerances", "dimension", "planar", "line"},
             "scene");
  SceneSpec s;
  if (!j.contains("version")) throw InputError("scene: missing 'version'");
  s.version = j["version"].get<int>();
  if (s.version != kSceneVersion) throw InputError("scene: unsupported version " + std::to_string(s.version));
  if (!j.contains("id")) throw InputError("scene: missing 'id'");
  s.id = j["id"].get<std::string>();
  std::string kind = j.value("kind", "surface");
  if (kind == "surface") s.kind = SceneKind::kSurface;
  else if (kind == "planar") s.kind = SceneKind::kPlanar;
  else if (kind == "line") s.kind = SceneKind::kLine;
  else throw InputError("scene: unknown kind '" + kind + "'");
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("steiner")) s.steiner = j["steiner"].get<int>();
  if (s.steiner < 1 || s.steiner > 16) throw InputError("scene: steiner must be in [1, 16]");

  if (j.contains("checks")) {
    for (const auto& c : j["checks"]) {
      auto name = c.get<std::string>();
      const auto& known = known_checks();
      if (std::find(known.begin(), known.end(), name) == known.end())
        throw InputError("scene: unknown check '" + name + "'");
      s.checks.push_back(name);
    }
  }

  if (s.kind == SceneKind::kSurface) {
    for (const char* key : {"surface", "a", "b", "h"})
      if (!j.contains(key)) throw InputError(std::string("scene: missing '") + key + "'");
  }
  if (j.contains("surface")) {
    const auto& sj = j["surface"];
    allow_only(sj, {"generator", "params", "mesh"}, "surface");
    s.surface.generator = sj.value("generator", "");
    s.surface.mesh = sj.value("mesh", "");
    if (s.surface.generator.empty() == s.surface.mesh.empty())
      throw InputError("surface: give exactly one of 'generator' and 'mesh'");
    if (!s.surface.generator.empty()) {
      auto it = generator_params().find(s.surface.generator);
      if (it == generator_params().end()) throw InputError("surface: unknown generator '" + s.surface.generator + "'");
      if (sj.contains("params")) {
        if (!sj["params"].is_object()) throw InputError("surface: params must be an object");
        for (const auto& [k, v] : sj["params"].items()) {
          if (!it->second.count(k)) throw InputError("surface: unknown parameter '" + k + "'");
          s.surface.params[k] = v.get<double>();
        }
      }
    } else if (sj.contains("params")) {
      throw InputError("surface: params need a generator");
    }
  }
  if (j.contains("a")) s.a = parse_focal(j["a"], "a");
  if (j.contains("b")) s.b = parse_focal(j["b"], "b");
  if (j.contains("h")) {
    s.h = j["h"].get<double>();
    if (!(s.h > 0.0)) throw InputError("scene: h must be positive");
  }

  if (j.contains("expect")) {
    const auto& e = j["expect"];
    allow_only(e, {"beta1", "length", "length_tol", "dimension", "dimension_tol", "circle", "intervals", "cbb"},
               "expect");
    if (e.contains("beta1") && !e["beta1"].is_null()) s.expect.beta1 = e["beta1"].get<int>();
    if (e.contains("length") && !e["length"].is_null()) s.expect.length = e["length"].get<double>();
    s.expect.length_tol = e.value("length_tol", s.expect.length_tol);
    if (e.contains("dimension") && !e["dimension"].is_null()) s.expect.dimension = e["dimension"].get<double>();
    s.expect.dimension_tol = e.value("dimension_tol", s.expect.dimension_tol);
    if (e.contains("circle") && !e["circle"].is_null()) {
      const auto& c = e["circle"];
      allow_only(c, {"center", "normal", "radius"}, "expect.circle");
      ReferenceCircle rc;
      if (c.contains("center")) rc.center = vec3(c["center"]);
      if (c.contains("normal")) rc.normal = vec3(c["normal"]);
      rc.radius = c.value("radius", rc.radius);
      if (!(rc.radius > 0.0) || norm(rc.normal) == 0.0) throw InputError("expect.circle: degenerate circle");
      s.expect.circle = rc;
    }
    if (e.contains("intervals"))
      for (const auto& iv : e["intervals"]) {
        Vec2 v = vec2(iv);
        s.expect.intervals.push_back({v.x, v.y});
      }
    if (e.contains("cbb") && !e["cbb"].is_null()) s.expect.cbb = e["cbb"].get<bool>();
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    allow_only(t, {"bisector_median", "derivative", "length_stability", "min_separation_factor", "min_wedge_samples"},
               "tolerances");
    s.tol.bisector_median = t.value("bisector_median", s.tol.bisector_median);
    s.tol.derivative = t.value("derivative", s.tol.derivative);
    s.tol.length_stability = t.value("length_stability", s.tol.length_stability);
    s.tol.min_separation_factor = t.value("min_separation_factor", s.tol.min_separation_factor);
    s.tol.min_wedge_samples = t.value("min_wedge_samples", s.tol.min_wedge_samples);
  }
  if (j.contains("dimension") && !j["dimension"].is_null()) {
    const auto& d = j["dimension"];
    allow_only(d, {"scales", "separation", "step"}, "dimension");
    DimensionDesc dd;
    dd.scales = d.value("scales", dd.scales);
    dd.separation = d.value("separation", dd.separation);
    dd.step = d.value("step", dd.step);
    if (dd.scales != "feature" && dd.scales != "window" && dd.scales != "length")
      throw InputError("dimension: scales must be feature, window or length");
    if (dd.scales == "feature" && !(dd.separation > 0.0)) throw InputError("dimension: feature scales need a separation");
    s.dimension = dd;
  }
  if (j.contains("planar")) {
    const auto& p = j["planar"];
    allow_only(p, {"scene", "level", "grid", "swap"}, "planar");
    s.planar.scene = p.value("scene", s.planar.scene);
    s.planar.level = p.value("level", s.planar.level);
    s.planar.grid = p.value("grid", s.planar.grid);
    s.planar.swap = p.value("swap", s.planar.swap);
    if (s.planar.scene != "koch") throw InputError("planar: unknown scene '" + s.planar.scene + "'");
    if (s.planar.level < 0 || s.planar.level > 8) throw InputError("planar: level must be in [0, 8]");
    if (s.planar.grid < 64 || s.planar.grid > 16384) throw InputError("planar: grid must be in [64, 16384]");
  }
  if (j.contains("line")) {
    const auto& l = j["line"];
    allow_only(l, {"metric", "p", "q", "lo", "hi", "resolution"}, "line");
    s.line.metric = l.value("metric", s.line.metric);
    s.line.p = l.value("p", s.line.p);
    s.line.q = l.value("q", s.line.q);
    s.line.lo = l.value("lo", s.line.lo);
    s.line.hi = l.value("hi", s.line.hi);
    s.line.resolution = l.value("resolution", s.line.resolution);
  }
  return s;
}

}  // namespace

SceneSpec parse_scene(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("scene: invalid JSON: ") + e.what());
  }
  try {
    return parse_json(j);
  } catch (const json::exception& e) {
    throw InputError(std::string("scene: ") + e.what());
  }
}

SceneSpec load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read scene file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string dump_scene(const SceneSpec& s) {
  json j;
  j["version"] = s.version;
  j["id"] = s.id;
  j["kind"] = to_string(s.kind);
  j["seed"] = s.seed;
  j["checks"] = s.checks;
  if (s.kind == SceneKind::kSurface) {
    json sj;
    if (!s.surface.generator.empty()) {
      sj["generator"] = s.surface.generator;
      sj["params"] = json::object();
      for (const auto& [k, v] : s.surface.params) sj["params"][k] = v;
    } else {
      sj["mesh"] = s.surface.mesh;
    }
    j["surface"] = sj;
    j["a"] = focal_json(s.a);
    j["b"] = focal_json(s.b);
    j["h"] = s.h;
    j["steiner"] = s.steiner;
    j["tolerances"] = {{"bisector_median", s.tol.bisector_median},
                       {"derivative", s.tol.derivative},
                       {"length_stability", s.tol.length_stability},
                       {"min_separation_factor", s.tol.min_separation_factor},
                       {"min_wedge_samples", s.tol.min_wedge_samples}};
    if (s.dimension)
      j["dimension"] = {{"scales", s.dimension->scales},
                        {"separation", s.dimension->separation},
                        {"step", s.dimension->step}};
  } else if (s.kind == SceneKind::kPlanar) {
    j["planar"] = {{"scene", s.planar.scene}, {"level", s.planar.level}, {"grid", s.planar.grid}, {"swap", s.planar.swap}};
  } else {
    j["line"] = {{"metric", s.line.metric}, {"p", s.line.p},   {"q", s.line.q},
                 {"lo", s.line.lo},         {"hi", s.line.hi}, {"resolution", s.line.resolution}};
  }
  json e = json::object();
  if (s.expect.beta1) e["beta1"] = *s.expect.beta1;
  if (s.expect.length) e["length"] = *s.expect.length, e["length_tol"] = s.expect.length_tol;
  if (s.expect.dimension) e["dimension"] = *s.expect.dimension, e["dimension_tol"] = s.expect.dimension_tol;
  if (s.expect.circle)
    e["circle"] = {{"center", to_json(s.expect.circle->center)},
                   {"normal", to_json(s.expect.circle->normal)},
                   {"radius", s.expect.circle->radius}};
  if (!s.expect.intervals.empty()) {
    e["intervals"] = json::array();
    for (const auto& iv : s.expect.intervals) e["intervals"].push_back({iv[0], iv[1]});
  }
  if (s.expect.cbb) e["cbb"] = *s.expect.cbb;
  j["expect"] = e;
  return j.dump(2);
}

std::uint64_t scene_hash(const SceneSpec& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump_scene(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace mediatrix::scene
