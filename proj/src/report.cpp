#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mediatrix/pipeline.hpp"

namespace mediatrix::pipeline {

using nlohmann::ordered_json;

namespace {

ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

ordered_json verdict_json(const Verdict& v, const std::string& scene) {
  ordered_json j;
  j["check"] = v.check;
  j["scene"] = scene;
  j["pass"] = v.pass;
  j["applicable"] = v.applicable;
  j["inconclusive"] = v.inconclusive;
  j["measured"] = number(v.measured);
  j["bound"] = number(v.bound);
  j["detail"] = v.detail;
  return j;
}

ordered_json scene_json(const SceneResult& r) {
  ordered_json j;
  j["scene"] = r.spec.id;
  j["hash"] = r.hash;
  j["kind"] = scene::to_string(r.spec.kind);
  j["seed"] = r.spec.seed;
  if (r.spec.kind == scene::SceneKind::kSurface) j["h"] = r.spec.h;
  if (r.validation) {
    const auto& v = *r.validation;
    ordered_json vj;
    vj["cbb"] = v.pass;
    vj["max_interior_angle"] = v.max_interior_angle;
    vj["gauss_bonnet_residual"] = v.gauss_bonnet_residual;
    vj["failures"] = ordered_json::array();
    for (const auto& f : v.failures) vj["failures"].push_back({{"vertex", f.vertex}, {"angle", f.angle}});
    vj["warnings"] = v.warnings.size();
    j["validation"] = vj;
  }
  if (r.stats) {
    const auto& s = *r.stats;
    ordered_json ej;
    ej["V"] = s.V;
    ej["Eg"] = s.Eg;
    ej["C"] = s.C;
    ej["beta1"] = s.beta1;
    ej["length"] = s.length;
    ej["junctions"] = s.junctions;
    ej["window_clipped"] = s.window_clipped;
    ej["loop_markers"] = s.loop_markers;
    ej["junction_degrees"] = ordered_json::object();
    for (const auto& [deg, n] : s.junction_degrees) ej["junction_degrees"][std::to_string(deg)] = n;
    ej["separation"] = number(s.separation);
    j["extraction"] = ej;
  }
  if (r.spec.kind == scene::SceneKind::kLine) {
    j["metric"] = r.spec.line.metric;
    j["intervals"] = ordered_json::array();
    for (const auto& p : r.intervals) j["intervals"].push_back({{"lo", p.lo}, {"hi", p.hi}, {"interval", p.interval}});
  }
  if (r.dimension) {
    const auto& d = *r.dimension;
    ordered_json dj;
    dj["slope"] = d.slope;
    dj["intercept"] = d.intercept;
    dj["residual"] = d.residual;
    dj["ci95"] = d.ci_half_width;
    dj["fit"] = {d.fit_first, d.fit_last};
    dj["scales"] = d.scales;
    dj["counts"] = d.counts;
    j["dimension"] = dj;
  }
  j["checks"] = ordered_json::array();
  for (const auto& v : r.verdicts) j["checks"].push_back(verdict_json(v, r.spec.id));
  j["aborted"] = r.aborted;
  j["pass"] = r.pass();
  return j;
}

struct SuiteEntry {
  std::string scene;
  std::set<std::string> only;  // checks kept; empty keeps all
};

const std::set<std::string> kWedgeChecks{"bisector", "derivative", "wedge_parity", "strict_negativity", "relabel"};
const std::set<std::string> kLengthChecks{"length", "length_stability"};
const std::set<std::string> kHomologyChecks{"validate", "beta1", "homology_bound", "minimal_separating"};

std::vector<SuiteEntry> suite_entries(const std::string& name) {
  if (name == "basics")
    return {{"line-d1", {}},
            {"line-d2", {}},
            {"line-standard", {}},
            {"doubled-disk-centers", {}},
            {"sphere-antipodal", {}},
            {"torus-diagonal", {"validate"}},
            {"cone-3pi2", {"validate"}},
            {"pillowcase", {"validate"}},
            {"plane-two-points", {"validate"}},
            {"sqrt-horn", {}}};
  if (name == "wedges")
    return {{"plane-two-points", kWedgeChecks}, {"plane-square", kWedgeChecks},  {"doubled-disk-centers", kWedgeChecks},
            {"sphere-antipodal", kWedgeChecks}, {"torus-diagonal", kWedgeChecks}, {"cone-3pi2", kWedgeChecks}};
  if (name == "simplicial")
    return {{"doubled-disk-centers", kLengthChecks}, {"sphere-antipodal", kLengthChecks},
            {"torus-diagonal", kLengthChecks},       {"pillowcase", kLengthChecks},
            {"plane-two-points", kLengthChecks},     {"plane-square", kLengthChecks},
            {"cone-3pi2", kLengthChecks},            {"comb-8-0.2", kLengthChecks}};
  if (name == "homology")
    return {{"doubled-disk-centers", kHomologyChecks}, {"doubled-disk-one-vs-two", kHomologyChecks},
            {"sphere-antipodal", kHomologyChecks},     {"sphere-one-vs-two", kHomologyChecks},
            {"torus-diagonal", kHomologyChecks},       {"torus-two-vs-one", kHomologyChecks},
            {"pillowcase", kHomologyChecks}};
  if (name == "planar-bell") {
    std::vector<SuiteEntry> out;
    for (int i = 0; i < 20; ++i) out.push_back({"bell-" + std::to_string(i), {}});
    return out;
  }
  if (name == "dimension")
    return {{"comb-2-0.2", {}}, {"comb-8-0.2", {}}, {"comb-16-0.05", {}}, {"plane-two-points", {"dimension"}},
            {"koch-0", {}},     {"koch-6", {}}};
  throw InputError("unknown suite '" + name + "'");
}

scene::SceneSpec entry_spec(const SuiteEntry& e, std::uint64_t seed) {
  auto spec = scene::builtin_scene(e.scene, seed);
  if (!e.only.empty()) {
    std::vector<std::string> kept;
    for (const auto& c : spec.checks)
      if (e.only.count(c)) kept.push_back(c);
    // Scenes that never asked for a length check still get the basic one.
    if (kept.empty() && e.only.count("length")) kept.push_back("length");
    spec.checks = kept;
  }
  return spec;
}

std::string attr(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::string report_json(const SceneResult& r) { return scene_json(r).dump(2) + "\n"; }

int SuiteResult::passed() const {
  return static_cast<int>(std::count_if(scenes.begin(), scenes.end(), [](const SceneResult& s) { return s.pass(); }));
}

bool SuiteResult::pass() const { return errors.empty() && passed() == static_cast<int>(scenes.size()); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"basics", "wedges", "simplicial", "homology", "planar-bell", "dimension"};
  return names;
}

std::vector<std::string> suite_scenes(const std::string& name) {
  std::vector<std::string> out;
  for (const auto& e : suite_entries(name)) out.push_back(e.scene);
  return out;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, unsigned workers) {
  const auto entries = suite_entries(name);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(entries.size()));

  std::vector<std::optional<SceneResult>> results(entries.size());
  std::vector<std::string> errors(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < entries.size();) {
      try {
        results[i] = run_scene(entry_spec(entries[i], seed));
      } catch (const std::exception& e) {
        errors[i] = entries[i].scene + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  SuiteResult out;
  out.name = name;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (results[i]) out.scenes.push_back(std::move(*results[i]));
    if (!errors[i].empty()) out.errors.push_back(errors[i]);
  }
  return out;
}

std::string suite_json(const SuiteResult& r) {
  ordered_json j;
  j["suite"] = r.name;
  j["scenes"] = r.scenes.size() + r.errors.size();
  j["passed"] = r.passed();
  j["pass_rate"] = r.scenes.empty() && r.errors.empty()
                       ? 0.0
                       : static_cast<double>(r.passed()) / static_cast<double>(r.scenes.size() + r.errors.size());
  j["errors"] = r.errors;
  j["reports"] = ordered_json::array();
  for (const auto& s : r.scenes) j["reports"].push_back(scene_json(s));
  j["pass"] = r.pass();
  return j.dump(2) + "\n";
}

std::string export_svg(const SceneResult& r) {
  auto [x0, y0, x1, y1] = r.view;
  double w = x1 - x0, h = y1 - y0;
  double pad = 0.02 * std::max(w, h);
  double stroke = 0.004 * std::max(w, h);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << attr(x0 - pad) << ' ' << attr(-(y1 + pad)) << ' '
     << attr(w + 2 * pad) << ' ' << attr(h + 2 * pad) << "\" width=\"800\" height=\""
     << static_cast<int>(800 * (h + 2 * pad) / (w + 2 * pad)) << "\">\n";
  os << "<rect x=\"" << attr(x0) << "\" y=\"" << attr(-y1) << "\" width=\"" << attr(w) << "\" height=\"" << attr(h)
     << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"" << attr(stroke / 2) << "\"/>\n";
  for (const auto& poly : r.outlines) {
    os << "<polygon fill=\"#cfd8e8\" stroke=\"#36c\" stroke-width=\"" << attr(stroke / 2) << "\" points=\"";
    for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << attr(poly[i].x) << ',' << attr(-poly[i].y);
    os << "\"/>\n";
  }
  for (const auto& line : r.polylines) {
    os << "<polyline fill=\"none\" stroke=\"#c33\" stroke-width=\"" << attr(stroke) << "\" points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) os << (i ? " " : "") << attr(line[i].x) << ',' << attr(-line[i].y);
    os << "\"/>\n";
  }
  for (Vec3 p : r.focal_points)
    os << "<circle cx=\"" << attr(p.x) << "\" cy=\"" << attr(-p.y) << "\" r=\"" << attr(2 * stroke)
       << "\" fill=\"#36c\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string export_obj(const SceneResult& r) {
  std::ostringstream os;
  os.precision(12);
  os << "# " << r.spec.id << " equidistant set, " << r.polylines.size() << " polylines\n";
  std::size_t base = 1;
  for (const auto& line : r.polylines)
    for (Vec3 p : line) os << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& line : r.polylines) {
    os << 'l';
    for (std::size_t i = 0; i < line.size(); ++i) os << ' ' << base + i;
    os << '\n';
    base += line.size();
  }
  return os.str();
}

std::string export_boxcount_csv(const SceneResult& r) {
  std::ostringstream os;
  os.precision(12);
  os << "scale,count,log_inv_scale,log_count,in_fit\n";
  if (!r.dimension) return os.str();
  const auto& d = *r.dimension;
  for (std::size_t i = 0; i < d.scales.size(); ++i) {
    int k = static_cast<int>(i);
    os << d.scales[i] << ',' << d.counts[i] << ',' << std::log(1.0 / d.scales[i]) << ',' << std::log(d.counts[i]) << ','
       << (k >= d.fit_first && k <= d.fit_last ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace mediatrix::pipeline
