#pragma once

// Declarative scene descriptions: surface, focal sets, resolution, checks and
// expected values. Scene files are strict JSON (version 1).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mediatrix/measure.hpp"
#include "mediatrix/metric_engine.hpp"

namespace mediatrix::scene {

inline constexpr int kSceneVersion = 1;

enum class SceneKind { kSurface, kPlanar, kLine };
const char* to_string(SceneKind k);

struct SurfaceDesc {
  std::string generator;                 // builtin generator name, or empty
  std::map<std::string, double> params;
  std::string mesh;                      // mesh file path when generator is empty
};

/// A focal set. Entries of all kinds are united.
struct FocalDesc {
  std::vector<int> vertices;
  std::vector<Vec3> points;              // snapped to the closest surface point
  int sheet = -1;                        // copy of a doubled surface for `points`
  std::vector<Vec2> uv;                  // torus (u, v) or cone (r, phi)
  std::vector<measure::Polygon> polygons;  // closed regions on planar surfaces
  bool empty() const { return vertices.empty() && points.empty() && uv.empty() && polygons.empty(); }
};

/// Koch snowflake scene analysed on a membership grid.
struct PlanarDesc {
  std::string scene = "koch";
  int level = 6;
  int grid = 4096;
  bool swap = false;
};

struct LineDesc {
  std::string metric = "standard";
  double p = 0.0;
  double q = 1.0;
  double lo = -10.0;
  double hi = 10.0;
  double resolution = 1e-4;
};

/// Box counting on the extracted complex.
struct DimensionDesc {
  // "feature": 2 sep / 2^k, k = 0..9; "window": extent / 2^k, k = 1..10;
  // "length": L / 2^k, k = 3..12 with L the length of E.
  std::string scales = "feature";
  double separation = 0.0;
  double step = 0.0;               // point spacing along E; 0 picks h / 8
};

/// Circle in the embedding that E should follow.
struct ReferenceCircle {
  Vec3 center{};
  Vec3 normal{0.0, 0.0, 1.0};
  double radius = 1.0;
};

/// Expected values; absent ones are not checked.
struct Expectations {
  std::optional<int> beta1;
  std::optional<double> length;
  double length_tol = 0.03;  // relative
  std::optional<double> dimension;
  double dimension_tol = 0.05;
  std::optional<ReferenceCircle> circle;
  std::vector<std::array<double, 2>> intervals;  // line scenes; equal ends for points
  std::optional<bool> cbb;                       // validator verdict
};

struct Tolerances {
  double bisector_median = 0.05;   // rad
  double derivative = 0.05;
  double length_stability = 0.05;  // relative change under h -> h / 2
  double min_separation_factor = 10.0;
  int min_wedge_samples = 200;
};

struct SceneSpec {
  int version = kSceneVersion;
  std::string id;
  SceneKind kind = SceneKind::kSurface;
  SurfaceDesc surface;
  FocalDesc a;
  FocalDesc b;
  double h = 0.0;
  int steiner = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> checks;
  Expectations expect;
  Tolerances tol;
  std::optional<DimensionDesc> dimension;
  PlanarDesc planar;
  LineDesc line;
};

/// Checks understood by the pipeline.
const std::vector<std::string>& known_checks();

/// Strict parse: unknown fields, missing required fields and a wrong version
/// throw InputError.
SceneSpec parse_scene(const std::string& json_text);
SceneSpec load_scene(const std::string& path);
/// Canonical JSON (sorted keys, every field written).
std::string dump_scene(const SceneSpec& s);
/// FNV-1a of the canonical JSON.
std::uint64_t scene_hash(const SceneSpec& s);
std::string hex64(std::uint64_t v);

/// Names of the builtin scenes.
std::vector<std::string> builtin_scenes();
/// Builtin by name; seeded families (bell-k) draw from `seed`. Throws InputError.
SceneSpec builtin_scene(const std::string& name, std::uint64_t seed = 0);

/// Two disjoint random star-shaped polygons in the window [0, 4] x [0, 3],
/// drawn from stream `index` of `seed`.
SceneSpec bell_scene(std::uint64_t seed, int index);

/// Builds the surface of a surface scene (h overrides the scene value when > 0).
metric::TriSurface load_surface(const SceneSpec& s, double h = 0.0);

/// Resolves a focal descriptor onto the samples. Polygons become region seeds:
/// samples inside get distance 0 and samples within `band` outside get their
/// exact distance and nearest point. Throws InputError on an empty result or a
/// descriptor the surface cannot take.
metric::FocalSet resolve_focal(const metric::SampleSet& ss, const FocalDesc& d, double band);

}  // namespace mediatrix::scene
