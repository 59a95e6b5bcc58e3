#pragma once

// Scene pipeline: load -> validate -> fields -> extract -> checks -> measure,
// and the deterministic JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mediatrix/measure.hpp"
#include "mediatrix/metric_lab.hpp"
#include "mediatrix/scene.hpp"
#include "mediatrix/surface.hpp"

namespace mediatrix::pipeline {

struct RunOptions {
  double h = 0.0;                       // overrides the scene resolution when > 0
  std::vector<std::string> checks;      // overrides the scene checks when nonempty
  std::optional<std::uint64_t> seed;    // overrides the scene seed
  bool require_cbb = false;             // stop after a failed validation
};

struct Verdict {
  std::string check;
  bool pass = false;
  bool applicable = true;
  bool inconclusive = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct ExtractionStats {
  int V = 0;
  int Eg = 0;
  int C = 0;
  int beta1 = 0;
  double length = 0.0;
  int junctions = 0;
  int window_clipped = 0;
  int loop_markers = 0;
  std::vector<std::pair<int, int>> junction_degrees;  // (degree, count)
  double separation = 0.0;
};

struct SceneResult {
  scene::SceneSpec spec;  // after overrides
  std::string hash;
  std::optional<surface::ValidationReport> validation;
  std::optional<ExtractionStats> stats;
  std::vector<Verdict> verdicts;
  std::optional<measure::DimensionEstimate> dimension;
  std::vector<metric_lab::Piece> intervals;
  bool aborted = false;  // --require-cbb stop

  // Geometry kept for exports.
  std::vector<std::vector<Vec3>> polylines;  // E, embedded
  std::vector<measure::Polygon> outlines;    // planar focal polygons
  std::vector<Vec3> focal_points;
  std::vector<double> bisector_residuals;  // per sampled point, not reported
  std::array<double, 4> view{0.0, 0.0, 1.0, 1.0};  // xmin, ymin, xmax, ymax

  bool pass() const;
};

/// Runs a scene. Throws InputError for bad input and GeometryError when the
/// extraction is refused.
SceneResult run_scene(const scene::SceneSpec& spec, const RunOptions& opt = {});

/// Deterministic report (no timings).
std::string report_json(const SceneResult& r);

struct SuiteResult {
  std::string name;
  std::vector<SceneResult> scenes;
  std::vector<std::string> errors;  // scenes that threw, "id: message"
  int passed() const;
  bool pass() const;
};

const std::vector<std::string>& suite_names();
/// Scene ids of a suite. Throws InputError for unknown names.
std::vector<std::string> suite_scenes(const std::string& name);
/// Runs every scene of the suite, concurrently up to `workers` threads
/// (0 = hardware concurrency); results keep suite order.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 0, unsigned workers = 0);
std::string suite_json(const SuiteResult& r);

// Exports.
std::string export_svg(const SceneResult& r);
std::string export_obj(const SceneResult& r);
std::string export_boxcount_csv(const SceneResult& r);

}  // namespace mediatrix::pipeline
