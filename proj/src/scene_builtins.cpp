#include <algorithm>
#include <cmath>
#include <functional>

#include "mediatrix/rng.hpp"
#include "mediatrix/scene.hpp"

namespace mediatrix::scene {

namespace {

using Checks = std::vector<std::string>;

const Checks kClosedChecks{"validate",      "homology_bound", "minimal_separating", "bisector",
                           "wedge_parity",  "strict_negativity", "relabel",          "length"};
const Checks kPlaneChecks{"validate",     "one_manifold",      "bisector", "derivative",
                          "wedge_parity", "strict_negativity", "relabel",  "length"};

SceneSpec surface_scene(const std::string& id, const std::string& gen, std::map<std::string, double> params,
                        double h, FocalDesc a, FocalDesc b, Checks checks) {
  SceneSpec s;
  s.id = id;
  s.kind = SceneKind::kSurface;
  s.surface.generator = gen;
  s.surface.params = std::move(params);
  s.h = h;
  s.a = std::move(a);
  s.b = std::move(b);
  s.checks = std::move(checks);
  return s;
}

FocalDesc pts(std::vector<Vec3> p, int sheet = -1) {
  FocalDesc d;
  d.points = std::move(p);
  d.sheet = sheet;
  return d;
}

FocalDesc uvs(std::vector<Vec2> p) {
  FocalDesc d;
  d.uv = std::move(p);
  return d;
}

FocalDesc polys(std::vector<measure::Polygon> p) {
  FocalDesc d;
  d.polygons = std::move(p);
  return d;
}

Vec3 on_sphere(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

ReferenceCircle unit_circle() { return ReferenceCircle{}; }

SceneSpec comb(const std::string& id, int teeth, double gap, double h) {
  auto pc = measure::comb_scene(teeth, gap);
  auto s = surface_scene(id, "flat_rectangle", {{"width", pc.hi.x - pc.lo.x}, {"height", pc.hi.y - pc.lo.y}}, h,
                         polys(pc.a), polys(pc.b), {"validate", "one_manifold", "minimal_separating", "length", "dimension"});
  s.dimension = DimensionDesc{"feature", gap, 0.0};
  s.expect.dimension = 1.0;
  s.expect.dimension_tol = 0.05;
  s.expect.beta1 = 0;
  return s;
}

SceneSpec koch(int level) {
  SceneSpec s;
  s.id = "koch-" + std::to_string(level);
  s.kind = SceneKind::kPlanar;
  s.planar.level = level;
  s.checks = {"dimension"};
  s.expect.dimension = level == 0 ? 1.0 : std::log(4.0) / std::log(3.0);
  s.expect.dimension_tol = level == 0 ? 0.05 : 0.04;
  return s;
}

SceneSpec line(const std::string& id, const std::string& metric, double p, double q,
               std::vector<std::array<double, 2>> expect) {
  SceneSpec s;
  s.id = id;
  s.kind = SceneKind::kLine;
  s.line = {metric, p, q, -10.0, 10.0, 1e-4};
  s.checks = {"line_intervals"};
  s.expect.intervals = std::move(expect);
  return s;
}

using Factory = std::function<SceneSpec()>;

const std::vector<std::pair<std::string, Factory>>& table() {
  static const std::vector<std::pair<std::string, Factory>> t{
      {"doubled-disk-centers",
       [] {
         auto s = surface_scene("doubled-disk-centers", "doubled_disk", {{"radius", 1.0}}, 0.02, pts({{0, 0, 0}}, 0),
                                pts({{0, 0, 0}}, 1), kClosedChecks);
         s.checks.push_back("reference_circle");
         s.expect.beta1 = 1;
         s.expect.length = kTwoPi;
         s.expect.circle = unit_circle();
         s.expect.cbb = true;
         return s;
       }},
      {"doubled-disk-one-vs-two",
       [] {
         auto s = surface_scene("doubled-disk-one-vs-two", "doubled_disk", {{"radius", 1.0}}, 0.04,
                                pts({{0, 0, 0}}, 0), pts({{0.5, 0, 0}, {-0.5, 0, 0}}, 1),
                                {"validate", "homology_bound", "minimal_separating", "relabel", "length"});
         s.expect.beta1 = 1;
         return s;
       }},
      {"sphere-antipodal",
       [] {
         auto s = surface_scene("sphere-antipodal", "sphere", {{"radius", 1.0}}, 0.05, pts({{0, 0, 1}}),
                                pts({{0, 0, -1}}), kClosedChecks);
         s.checks.push_back("reference_circle");
         s.checks.push_back("length_stability");
         s.expect.beta1 = 1;
         s.expect.length = kTwoPi;
         s.expect.circle = unit_circle();
         s.expect.cbb = true;
         return s;
       }},
      {"sphere-one-vs-two",
       [] {
         auto s = surface_scene("sphere-one-vs-two", "sphere", {{"radius", 1.0}}, 0.05, pts({on_sphere(0.0, 0.0)}),
                                pts({on_sphere(2.0, 0.3), on_sphere(2.4, 3.5)}),
                                {"validate", "homology_bound", "minimal_separating", "relabel", "length"});
         s.expect.beta1 = 1;
         return s;
       }},
      {"torus-diagonal",
       [] {
         auto s = surface_scene("torus-diagonal", "flat_torus", {{"side", 1.0}}, 0.05, uvs({{0.0, 0.0}}),
                                uvs({{0.5, 0.5}}), kClosedChecks);
         s.checks.push_back("derivative");
         s.expect.beta1 = 3;
         s.expect.cbb = true;
         return s;
       }},
      {"torus-two-vs-one",
       [] {
         auto s = surface_scene("torus-two-vs-one", "flat_torus", {{"side", 1.0}}, 0.05,
                                uvs({{0.0, 0.0}, {0.5, 0.0}}), uvs({{0.25, 0.5}}),
                                {"validate", "homology_bound", "minimal_separating", "relabel", "length"});
         s.expect.beta1 = 2;
         return s;
       }},
      {"pillowcase",
       [] {
         auto s = surface_scene("pillowcase", "pillowcase", {{"side", 1.0}}, 0.04, pts({{0.25, 0.5, 0}}, 0),
                                pts({{0.75, 0.5, 0}}, 0),
                                {"validate", "homology_bound", "minimal_separating", "relabel", "length"});
         s.expect.beta1 = 1;
         s.expect.length = 2.0;
         s.expect.cbb = true;
         return s;
       }},
      {"plane-two-points",
       [] {
         auto s = surface_scene("plane-two-points", "flat_disk", {{"radius", 1.5}}, 0.02, pts({{-0.6, 0, 0}}),
                                pts({{0.6, 0, 0}}), kPlaneChecks);
         s.checks.push_back("length_stability");
         s.checks.push_back("dimension");
         s.dimension = DimensionDesc{"length", 0.0, 0.0};
         s.expect.beta1 = 0;
         s.expect.length = 3.0;
         s.expect.length_tol = 0.02;
         s.expect.dimension = 1.0;
         s.expect.cbb = true;
         return s;
       }},
      {"plane-square",
       [] {
         auto s = surface_scene("plane-square", "flat_disk", {{"radius", 1.5}}, 0.02,
                                pts({{-0.6, 0, 0}, {0.6, 0, 0}}), pts({{0, -0.6, 0}, {0, 0.6, 0}}),
                                {"validate", "bisector", "derivative", "wedge_parity", "strict_negativity", "relabel",
                                 "length", "length_stability"});
         s.expect.beta1 = 0;
         s.expect.length = 6.0;
         return s;
       }},
      {"cone-3pi2",
       [] {
         auto s = surface_scene("cone-3pi2", "cone", {{"angle", 1.5 * kPi}, {"radius", 1.0}}, 0.05,
                                uvs({{0.6, 0.0}}), uvs({{0.6, 0.75 * kPi}}),
                                {"validate", "bisector", "wedge_parity", "strict_negativity", "relabel", "length"});
         s.expect.cbb = true;
         return s;
       }},
      {"sqrt-horn",
       [] {
         auto s = surface_scene("sqrt-horn", "sqrt_horn", {}, 0.05, pts({{0.8, 0.0, std::sqrt(0.8)}}),
                                pts({{-0.8, 0.0, std::sqrt(0.8)}}), {"validate"});
         s.expect.cbb = false;
         return s;
       }},
      {"comb-2-0.2", [] { return comb("comb-2-0.2", 2, 0.2, 0.018); }},
      {"comb-8-0.2", [] { return comb("comb-8-0.2", 8, 0.2, 0.015); }},
      {"comb-16-0.05", [] { return comb("comb-16-0.05", 16, 0.05, 0.0045); }},
      {"koch-0", [] { return koch(0); }},
      {"koch-6", [] { return koch(6); }},
      {"line-d1", [] { return line("line-d1", "d1", 0.0, 4.0, {{2.0, 2.0}}); }},
      {"line-d2", [] { return line("line-d2", "d2", 2.0, -2.0, {{-10.0, -3.0}, {-1.0, 1.0}, {3.0, 10.0}}); }},
      {"line-standard", [] { return line("line-standard", "standard", -1.0, 3.0, {{1.0, 1.0}}); }},
  };
  return t;
}

constexpr int kBellScenes = 20;

measure::Polygon star_polygon(CounterRng& rng, Vec2 center, double radius) {
  const int k = 5 + static_cast<int>(rng.uniform() * 5.0);
  measure::Polygon p;
  for (int i = 0; i < k; ++i) {
    double a = kTwoPi * (i + rng.uniform(-0.3, 0.3)) / k;
    double r = radius * rng.uniform(0.5, 1.0);
    p.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a)});
  }
  return p;
}

}  // namespace

SceneSpec bell_scene(std::uint64_t seed, int index) {
  if (index < 0) throw InputError("bell scene index must be nonnegative");
  CounterRng rng(seed, static_cast<std::uint64_t>(index));
  Vec2 ca{1.1 + rng.uniform(-0.15, 0.15), 1.5 + rng.uniform(-0.4, 0.4)};
  Vec2 cb{2.9 + rng.uniform(-0.15, 0.15), 1.5 + rng.uniform(-0.4, 0.4)};
  auto pa = star_polygon(rng, ca, 0.55);
  auto pb = star_polygon(rng, cb, 0.55);
  auto s = surface_scene("bell-" + std::to_string(index), "flat_rectangle", {{"width", 4.0}, {"height", 3.0}}, 0.035,
                         polys({pa}), polys({pb}), {"validate", "one_manifold", "minimal_separating", "relabel", "length"});
  s.seed = seed;
  s.expect.beta1 = 0;
  s.checks.insert(s.checks.begin() + 1, "beta1");
  return s;
}

std::vector<std::string> builtin_scenes() {
  std::vector<std::string> names;
  for (const auto& [n, f] : table()) names.push_back(n);
  for (int i = 0; i < kBellScenes; ++i) names.push_back("bell-" + std::to_string(i));
  return names;
}

SceneSpec builtin_scene(const std::string& name, std::uint64_t seed) {
  for (const auto& [n, f] : table())
    if (n == name) {
      auto s = f();
      s.seed = seed;
      if (s.expect.beta1) s.checks.insert(s.checks.begin() + 1, "beta1");
      return s;
    }
  if (name.rfind("bell-", 0) == 0) {
    try {
      std::size_t used = 0;
      int k = std::stoi(name.substr(5), &used);
      if (used == name.size() - 5 && k >= 0 && k < kBellScenes) return bell_scene(seed, k);
    } catch (const std::exception&) {
    }
  }
  throw InputError("unknown builtin scene '" + name + "'");
}

metric::TriSurface load_surface(const SceneSpec& s, double h) {
  if (s.kind != SceneKind::kSurface) throw InputError("scene '" + s.id + "' has no surface");
  const double hh = h > 0.0 ? h : s.h;
  if (!s.surface.generator.empty()) return surface::make_builtin(s.surface.generator, s.surface.params, hh);
  return surface::read_mesh(s.surface.mesh);
}

namespace {

// Nearest point of the polygon boundary.
Vec2 nearest_on_polygon(const measure::Polygon& p, Vec2 x) {
  Vec2 best = p[0];
  double bd = distance(x, best);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vec2 a = p[i], b = p[(i + 1) % p.size()], d = b - a;
    double t = std::clamp(dot(x - a, d) / dot(d, d), 0.0, 1.0);
    Vec2 q = a + d * t;
    double dq = distance(x, q);
    if (dq < bd) bd = dq, best = q;
  }
  return best;
}

// Planar world coordinates to the layout frame of face f.
Vec2 to_face(const metric::TriSurface& s, int f, Vec2 q) {
  const auto& tri = s.face(f);
  const auto& P = s.positions();
  Vec2 p0{P[tri[0]].x, P[tri[0]].y}, p1{P[tri[1]].x, P[tri[1]].y}, p2{P[tri[2]].x, P[tri[2]].y};
  double det = cross(p1 - p0, p2 - p0);
  double b1 = cross(q - p0, p2 - p0) / det, b2 = cross(p1 - p0, q - p0) / det;
  const auto& l = s.layout(f);
  return l[0] * (1.0 - b1 - b2) + l[1] * b1 + l[2] * b2;
}

}  // namespace

metric::FocalSet resolve_focal(const metric::SampleSet& ss, const FocalDesc& d, double band) {
  const auto& s = ss.surface();
  metric::FocalSet k;
  for (int v : d.vertices) {
    if (v < 0 || v >= s.num_vertices()) throw InputError("focal vertex " + std::to_string(v) + " out of range");
    k.points.push_back(metric::vertex_point(s, v));
  }
  if (!d.points.empty() && !s.has_positions()) throw InputError("focal points need an embedded surface");
  for (Vec3 p : d.points) k.points.push_back(metric::locate(s, p, d.sheet));
  for (Vec2 p : d.uv) k.points.push_back(metric::locate_uv(s, p));
  if (!d.polygons.empty()) {
    if (s.chart() != surface::Chart::kPlanar) throw InputError("focal polygons need a planar surface");
    for (int id = 0; id < ss.size(); ++id) {
      auto loc = ss.location(id);
      Vec3 w = metric::embed(s, loc);
      Vec2 x{w.x, w.y};
      double best = std::numeric_limits<double>::infinity();
      Vec2 near{};
      for (const auto& poly : d.polygons) {
        if (measure::inside(poly, x)) {
          best = 0.0, near = x;
          break;
        }
        Vec2 q = nearest_on_polygon(poly, x);
        double dq = distance(x, q);
        if (dq < best) best = dq, near = q;
      }
      if (best <= band) k.seeds.push_back({id, best, loc.face, best == 0.0 ? loc.p : to_face(s, loc.face, near)});
    }
  }
  if (k.empty()) throw InputError("focal set resolves to nothing");
  return k;
}

}  // namespace mediatrix::scene
