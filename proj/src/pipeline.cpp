#include "mediatrix/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "mediatrix/equidistant.hpp"
#include "mediatrix/topology.hpp"

namespace mediatrix::pipeline {

using equidistant::EquidistantComplex;
using equidistant::NodeKind;
using equidistant::SignedField;
using metric::DistanceField;
using metric::FocalSet;
using metric::SampleSet;
using metric::SurfacePoint;
using metric::TriSurface;
using scene::SceneKind;
using scene::SceneSpec;

bool SceneResult::pass() const {
  if (aborted) return false;
  for (const auto& v : verdicts)
    if (!v.pass) return false;
  return true;
}

namespace {

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool flat_interior(const TriSurface& s) {
  for (int v = 0; v < s.num_vertices(); ++v)
    if (!s.is_boundary_vertex(v) && std::fabs(s.cone_angle(v) - kTwoPi) > 1e-6) return false;
  return true;
}

Verdict not_applicable(const std::string& check, const std::string& why) {
  Verdict v;
  v.check = check;
  v.pass = true;
  v.applicable = false;
  v.detail = "not applicable: " + why;
  return v;
}

Verdict from(const topology::CheckResult& r) {
  return {r.check, r.pass, true, r.inconclusive, r.measured, r.bound, r.detail};
}

double circle_distance(const scene::ReferenceCircle& c, Vec3 p) {
  Vec3 n = c.normal * (1.0 / norm(c.normal));
  Vec3 v = p - c.center;
  double along = dot(v, n);
  Vec3 perp = v - n * along;
  double r = norm(perp);
  if (r == 0.0) return std::sqrt(c.radius * c.radius + along * along);
  return distance(p, c.center + perp * (c.radius / r));
}

// Points every `step` along the embedded complex.
std::vector<Vec3> embedded_points(const EquidistantComplex& c, double step) {
  const auto& s = c.field->surface();
  std::vector<Vec3> out;
  for (const auto& e : c.edges)
    for (const auto& seg : e.segments) {
      Vec3 a = metric::embed(s, {seg.face, seg.a}), b = metric::embed(s, {seg.face, seg.b});
      int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / step)));
      for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * (static_cast<double>(k) / n));
      out.push_back(b);
    }
  return out;
}

double one_sided_hausdorff(const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
  double worst = 0.0;
  for (Vec3 p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (Vec3 q : to) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<double> scales_for(const scene::DimensionDesc& d, double length, const measure::PlanarScene* window) {
  if (d.scales == "feature") return measure::feature_scales(d.separation);
  if (d.scales == "length") return measure::dyadic_scales(length, 3, 12);
  if (!window) throw InputError("window scales need a planar window");
  return measure::default_scales(std::max(window->hi.x - window->lo.x, window->hi.y - window->lo.y));
}

// One resolution level of a surface scene.
struct Level {
  TriSurface surface;
  std::unique_ptr<SampleSet> samples;
  FocalSet ka, kb;
  std::unique_ptr<DistanceField> fa, fb;
  std::unique_ptr<SignedField> f;
  EquidistantComplex c;
};

std::unique_ptr<Level> build_level(const SceneSpec& spec, double h) {
  auto lv = std::make_unique<Level>();
  lv->surface = scene::load_surface(spec, h);
  lv->samples = std::make_unique<SampleSet>(lv->surface, spec.steiner);
  lv->ka = scene::resolve_focal(*lv->samples, spec.a, 2.0 * h);
  lv->kb = scene::resolve_focal(*lv->samples, spec.b, 2.0 * h);
  // The two fields are independent.
  auto fb = std::async(std::launch::async, [&] { return metric::distance_to_set(*lv->samples, lv->kb); });
  lv->fa = std::make_unique<DistanceField>(metric::distance_to_set(*lv->samples, lv->ka));
  lv->fb = std::make_unique<DistanceField>(fb.get());
  lv->f = std::make_unique<SignedField>(equidistant::signed_field(*lv->fa, *lv->fb));
  equidistant::ExtractOptions opt;
  opt.h = h;
  opt.min_separation_factor = spec.tol.min_separation_factor;
  lv->c = equidistant::extract_equidistant(*lv->f, opt);
  return lv;
}

class SurfaceRun {
 public:
  SurfaceRun(const SceneSpec& spec, const Level& lv, SceneResult& out)
      : spec_(spec), h_(spec.h), lv_(lv), s_(lv.surface), c_(lv.c), out_(out) {}

  Verdict run(const std::string& check) {
    if (check == "validate") return validate();
    if (check == "beta1") return beta1();
    if (check == "homology_bound") return homology();
    if (check == "minimal_separating") return separating();
    if (check == "one_manifold") return one_manifold();
    if (check == "bisector") return bisector();
    if (check == "wedge_parity") return wedge_parity();
    if (check == "derivative") return derivative();
    if (check == "strict_negativity") return strict_negativity();
    if (check == "relabel") return relabel();
    if (check == "length") return length();
    if (check == "length_stability") return length_stability();
    if (check == "reference_circle") return reference_circle();
    if (check == "dimension") return dimension();
    return not_applicable(check, "surface scene");
  }

 private:
  Verdict validate() {
    Verdict v;
    v.check = "validate";
    const auto& r = *out_.validation;
    bool expected = spec_.expect.cbb.value_or(true);
    v.pass = r.pass == expected;
    v.measured = r.max_interior_angle;
    v.bound = kTwoPi;
    v.detail = std::string("cbb=") + (r.pass ? "true" : "false") + " expected=" + (expected ? "true" : "false") +
               " failures=" + std::to_string(r.failures.size()) + " warnings=" + std::to_string(r.warnings.size());
    return v;
  }

  Verdict beta1() {
    Verdict v;
    v.check = "beta1";
    v.measured = out_.stats->beta1;
    if (!spec_.expect.beta1) return not_applicable("beta1", "no expected value");
    v.bound = *spec_.expect.beta1;
    v.pass = out_.stats->beta1 == *spec_.expect.beta1;
    v.detail = "measured=" + std::to_string(out_.stats->beta1) + " expected=" + std::to_string(*spec_.expect.beta1);
    return v;
  }

  const topology::SideLabeling& sides() {
    if (!sides_) {
      int h0a = topology::focal_components(*lv_.samples, lv_.ka, 3.0 * h_);
      int h0b = topology::focal_components(*lv_.samples, lv_.kb, 3.0 * h_);
      sides_ = topology::side_labeling(c_, h0a, h0b);
    }
    return *sides_;
  }

  Verdict homology() {
    if (!s_.closed()) return not_applicable("homology_bound", "surface has boundary");
    return from(topology::homology_bound_check(topology::cycle_rank(c_), topology::surface_h1_z2(s_), sides()));
  }

  Verdict separating() { return from(topology::minimal_separating_check(c_, sides())); }

  Verdict one_manifold() {
    if (s_.chart() != surface::Chart::kPlanar) return not_applicable("one_manifold", "not a planar window");
    return from(topology::one_manifold_check(c_));
  }

  // Shared sampling for the wedge checks.
  struct WedgeStats {
    int points = 0;
    int unresolved = 0;
    int odd = 0;
    int obtuse = 0;
    int wedges = 0;
    std::vector<double> residuals;
    int junctions_tested = 0;
    int junction_mismatch = 0;
  };

  const WedgeStats& wedge_stats() {
    if (wedges_) return *wedges_;
    WedgeStats w;
    const auto& fa = *lv_.fa;
    const auto& fb = *lv_.fb;
    double step = std::min(5.0 * h_, c_.total_length() / (1.1 * spec_.tol.min_wedge_samples));
    std::vector<equidistant::SamplePoint> pts;
    for (int tries = 0; tries < 5; ++tries, step *= 0.5) {
      pts = equidistant::sample_edges(c_, step, 3.0 * h_);
      if (static_cast<int>(pts.size()) >= spec_.tol.min_wedge_samples) break;
    }
    for (const auto& sp : pts) {
      std::pair<metric::DirectionSet, metric::DirectionSet> dirs;
      try {
        dirs = metric::directions_at(fa, fb, sp.where, h_);
      } catch (const ResolutionError&) {
        ++w.unresolved;
        continue;
      }
      if (dirs.first.directions.empty() || dirs.second.directions.empty()) {
        ++w.unresolved;
        continue;
      }
      auto ws = equidistant::wedges_at(sp.where, dirs.first, dirs.second, dirs.first.total_angle);
      ++w.points;
      w.wedges += static_cast<int>(ws.size());
      if (ws.size() % 2) ++w.odd;
      for (const auto& wd : ws) w.obtuse += wd.obtuse;
      auto t = equidistant::tangent_angle(c_, sp.edge, sp.s, 3.0 * h_);
      if (!t || equidistant::near_cone_point(s_, sp.where, 3.0 * h_)) continue;
      double best = kPi;
      for (const auto& wd : ws) best = std::min(best, equidistant::bisector_residual(*t, wd));
      w.residuals.push_back(best);
    }
    for (const auto& n : c_.nodes) {
      if (n.kind != NodeKind::kJunction) continue;
      try {
        auto dirs = metric::directions_at(fa, fb, n.where, h_);
        auto ws = equidistant::wedges_at(n.where, dirs.first, dirs.second, dirs.first.total_angle);
        ++w.junctions_tested;
        if (static_cast<int>(ws.size()) != n.degree) ++w.junction_mismatch;
      } catch (const Error&) {
      }
    }
    wedges_ = w;
    return *wedges_;
  }

  Verdict bisector() {
    const auto& w = wedge_stats();
    Verdict v;
    v.check = "bisector";
    out_.bisector_residuals = w.residuals;
    v.measured = median(w.residuals);
    v.bound = spec_.tol.bisector_median;
    v.pass = !w.residuals.empty() && v.measured < v.bound;
    double worst = w.residuals.empty() ? 0.0 : *std::max_element(w.residuals.begin(), w.residuals.end());
    v.detail = "median=" + fmt(v.measured) + " max=" + fmt(worst) + " points=" + std::to_string(w.residuals.size()) +
               " obtuse_wedges=" + std::to_string(w.obtuse) + "/" + std::to_string(w.wedges);
    return v;
  }

  Verdict wedge_parity() {
    const auto& w = wedge_stats();
    Verdict v;
    v.check = "wedge_parity";
    v.measured = w.points;
    v.bound = spec_.tol.min_wedge_samples;
    v.pass = w.points >= spec_.tol.min_wedge_samples && w.odd == 0 && w.junction_mismatch == 0;
    v.detail = "points=" + std::to_string(w.points) + " odd=" + std::to_string(w.odd) +
               " unresolved=" + std::to_string(w.unresolved) + " junctions=" + std::to_string(w.junctions_tested) +
               " degree_mismatch=" + std::to_string(w.junction_mismatch);
    return v;
  }

  Verdict derivative() {
    if (!flat_interior(s_)) return not_applicable("derivative", "surface is not flat");
    Verdict v;
    v.check = "derivative";
    v.bound = spec_.tol.derivative;
    auto pts = equidistant::sample_edges(c_, 5.0 * h_, 3.0 * h_);
    const std::size_t want = 6;
    int tested = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < want && !pts.empty(); ++i) {
      const auto& sp = pts[i * pts.size() / want];
      auto dirs = metric::directions(*lv_.fa, sp.where, h_);
      if (dirs.directions.empty()) continue;
      double toward = dirs.directions[0].angle;
      // Steps stay well inside the cut locus of A.
      double step = std::min(4.0 * h_, dirs.directions[0].length / 8.0);
      for (double ang : {0.0, kPi / 4, kPi / 2, 2 * kPi / 3, kPi}) {
        try {
          auto est = metric::one_sided_derivative(*lv_.fa, sp.where, toward + ang, {step, 0.5 * step}, h_);
          worst = std::max(worst, std::fabs(est.estimate - est.predicted));
          ++tested;
        } catch (const ResolutionError&) {
        }
      }
    }
    v.measured = worst;
    v.pass = tested > 0 && worst < v.bound;
    v.detail = "max_error=" + fmt(worst) + " directions=" + std::to_string(tested);
    return v;
  }

  Verdict strict_negativity() {
    Verdict v;
    v.check = "strict_negativity";
    const auto& f = *lv_.f;
    auto pts = equidistant::sample_edges(c_, 5.0 * h_, 3.0 * h_);
    const std::size_t want = 40;
    int paths = 0, probes = 0, bad = 0;
    for (std::size_t i = 0; i < want && !pts.empty(); ++i) {
      const auto& sp = pts[i * pts.size() / want];
      for (int side = 0; side < 2; ++side) {
        const auto& field = side == 0 ? *lv_.fa : *lv_.fb;
        metric::GeodesicPath path;
        try {
          path = metric::trace_shortest_path(field, sp.where);
        } catch (const Error&) {
          continue;
        }
        ++paths;
        for (double t = 2.0 * h_; t <= path.length(); t += 0.5 * h_) {
          double val = f.evaluate(metric::point_along(s_, path, t));
          ++probes;
          if (side == 0 ? val >= 0.0 : val <= 0.0) ++bad;
        }
      }
    }
    v.measured = bad;
    v.bound = 0;
    v.pass = paths > 0 && bad == 0;
    v.detail = "paths=" + std::to_string(paths) + " probes=" + std::to_string(probes) + " violations=" + std::to_string(bad);
    return v;
  }

  Verdict relabel() {
    Verdict v;
    v.check = "relabel";
    auto fr = lv_.f->relabeled();
    equidistant::ExtractOptions opt;
    opt.h = h_;
    opt.min_separation_factor = spec_.tol.min_separation_factor;
    auto cr = equidistant::extract_equidistant(fr, opt);
    v.pass = c_.same_as(cr);
    v.measured = v.pass ? 1 : 0;
    v.bound = 1;
    v.detail = std::string("identical=") + (v.pass ? "true" : "false");
    return v;
  }

  Verdict length() {
    Verdict v;
    v.check = "length";
    double len = c_.total_length();
    v.measured = len;
    v.pass = len > 0.0 && std::isfinite(len);
    v.detail = "length=" + fmt(len);
    if (spec_.expect.length) {
      double rel = std::fabs(len - *spec_.expect.length) / *spec_.expect.length;
      v.bound = *spec_.expect.length;
      v.pass = v.pass && rel <= spec_.expect.length_tol;
      v.detail += " expected=" + fmt(*spec_.expect.length) + " rel_error=" + fmt(rel);
    }
    return v;
  }

  Verdict length_stability() {
    Verdict v;
    v.check = "length_stability";
    auto fine = build_level(spec_, 0.5 * h_);
    double l1 = c_.total_length(), l2 = fine->c.total_length();
    double rel = std::fabs(l2 - l1) / l1;
    int b1 = topology::cycle_rank(c_).beta1, b2 = topology::cycle_rank(fine->c).beta1;
    v.measured = rel;
    v.bound = spec_.tol.length_stability;
    v.pass = rel < v.bound && b1 == b2;
    v.detail = "length_h=" + fmt(l1) + " length_h/2=" + fmt(l2) + " beta1_h=" + std::to_string(b1) +
               " beta1_h/2=" + std::to_string(b2);
    if (s_.has_positions()) {
      auto p1 = embedded_points(c_, 0.5 * h_), p2 = embedded_points(fine->c, 0.5 * h_);
      double hd = std::max(one_sided_hausdorff(p1, p2), one_sided_hausdorff(p2, p1));
      v.pass = v.pass && hd <= 3.0 * h_;
      v.detail += " hausdorff=" + fmt(hd);
    }
    return v;
  }

  Verdict reference_circle() {
    if (!spec_.expect.circle) return not_applicable("reference_circle", "no reference circle");
    if (!s_.has_positions()) return not_applicable("reference_circle", "surface has no embedding");
    const auto& rc = *spec_.expect.circle;
    Verdict v;
    v.check = "reference_circle";
    auto pts = embedded_points(c_, 0.25 * h_);
    double d1 = 0.0;
    for (Vec3 p : pts) d1 = std::max(d1, circle_distance(rc, p));
    // Circle samples against E.
    Vec3 n = rc.normal * (1.0 / norm(rc.normal));
    Vec3 u = std::fabs(n.x) < 0.9 ? cross(n, Vec3{1, 0, 0}) : cross(n, Vec3{0, 1, 0});
    u = u * (1.0 / norm(u));
    Vec3 w = cross(n, u);
    std::vector<Vec3> circle;
    const int m = std::max(64, static_cast<int>(std::ceil(kTwoPi * rc.radius / (0.25 * h_))));
    for (int k = 0; k < m; ++k) {
      double a = kTwoPi * k / m;
      circle.push_back(rc.center + u * (rc.radius * std::cos(a)) + w * (rc.radius * std::sin(a)));
    }
    double d2 = one_sided_hausdorff(circle, pts);
    v.measured = std::max(d1, d2);
    v.bound = 2.0 * h_;
    v.pass = v.measured <= v.bound;
    v.detail = "hausdorff=" + fmt(v.measured);
    return v;
  }

  Verdict dimension() {
    if (!spec_.dimension) return not_applicable("dimension", "no dimension block");
    if (s_.chart() != surface::Chart::kPlanar) return not_applicable("dimension", "not a planar window");
    Verdict v;
    v.check = "dimension";
    const auto& d = *spec_.dimension;
    double len = c_.total_length();
    measure::PlanarScene win;
    {
      win.lo = win.hi = {s_.positions()[0].x, s_.positions()[0].y};
      for (Vec3 p : s_.positions()) {
        win.lo = {std::min(win.lo.x, p.x), std::min(win.lo.y, p.y)};
        win.hi = {std::max(win.hi.x, p.x), std::max(win.hi.y, p.y)};
      }
    }
    auto scales = scales_for(d, len, &win);
    double step = d.step > 0.0 ? d.step : std::min({h_ / 8.0, len / 12000.0, scales.back() / 4.0});
    double expected = spec_.expect.dimension.value_or(1.0);
    v.bound = expected;
    try {
      auto est = measure::box_counting_dimension(measure::planar_points(c_, step), scales);
      out_.dimension = est;
      v.measured = est.slope;
      v.pass = std::fabs(est.slope - expected) <= spec_.expect.dimension_tol;
      v.detail = "slope=" + fmt(est.slope) + " expected=" + fmt(expected) + " tol=" + fmt(spec_.expect.dimension_tol) +
                 " ci95=" + fmt(est.ci_half_width);
    } catch (const InputError& e) {
      v.pass = false;
      v.detail = e.what();
    }
    return v;
  }

  const SceneSpec& spec_;
  double h_;
  const Level& lv_;
  const TriSurface& s_;
  const EquidistantComplex& c_;
  SceneResult& out_;
  std::optional<topology::SideLabeling> sides_;
  std::optional<WedgeStats> wedges_;
};

void run_surface(SceneResult& r, const RunOptions& opt) {
  const SceneSpec& spec = r.spec;
  if (!(spec.h > 0.0)) throw InputError("scene '" + spec.id + "': h must be positive");
  auto surface = scene::load_surface(spec, spec.h);
  r.validation = surface::validate_alexandrov(surface);
  if (opt.require_cbb && !r.validation->pass) {
    r.aborted = true;
    Verdict v;
    v.check = "validate";
    v.pass = false;
    v.measured = r.validation->max_interior_angle;
    v.bound = kTwoPi;
    v.detail = "cbb=false failures=" + std::to_string(r.validation->failures.size()) + " (--require-cbb)";
    r.verdicts.push_back(v);
    return;
  }
  auto lv = build_level(spec, spec.h);
  const auto& c = lv->c;
  auto top = topology::cycle_rank(c);
  ExtractionStats st;
  st.V = top.V;
  st.Eg = top.Eg;
  st.C = top.C;
  st.beta1 = top.beta1;
  st.length = c.total_length();
  st.junctions = c.count(NodeKind::kJunction);
  st.window_clipped = c.count(NodeKind::kWindowClipped);
  st.loop_markers = c.count(NodeKind::kLoopMarker);
  for (const auto& [deg, n] : top.degree_histogram) st.junction_degrees.push_back({deg, n});
  st.separation = equidistant::focal_separation(*lv->fa, *lv->fb);
  r.stats = st;

  SurfaceRun run(spec, *lv, r);
  for (const auto& check : spec.checks) r.verdicts.push_back(run.run(check));

  const auto& s = lv->surface;
  if (s.has_positions()) {
    for (const auto& e : c.edges) {
      std::vector<Vec3> line;
      for (const auto& seg : e.segments) {
        if (line.empty()) line.push_back(metric::embed(s, {seg.face, seg.a}));
        line.push_back(metric::embed(s, {seg.face, seg.b}));
      }
      if (!line.empty()) r.polylines.push_back(std::move(line));
    }
    for (const auto& p : lv->ka.points) r.focal_points.push_back(metric::embed(s, p));
    for (const auto& p : lv->kb.points) r.focal_points.push_back(metric::embed(s, p));
    Vec3 lo = s.positions()[0], hi = lo;
    for (Vec3 p : s.positions()) {
      lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), 0.0};
      hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), 0.0};
    }
    r.view = {lo.x, lo.y, hi.x, hi.y};
  }
  for (const auto& p : spec.a.polygons) r.outlines.push_back(p);
  for (const auto& p : spec.b.polygons) r.outlines.push_back(p);
}

void run_planar(SceneResult& r) {
  const auto& p = r.spec.planar;
  auto ps = measure::koch_scene(p.level);
  if (p.swap) ps = measure::swapped(ps);
  for (const auto& poly : ps.a) r.outlines.push_back(poly);
  r.view = {ps.lo.x, ps.lo.y, ps.hi.x, ps.hi.y};
  for (const auto& check : r.spec.checks) {
    if (check != "dimension") {
      r.verdicts.push_back(not_applicable(check, "planar membership scene"));
      continue;
    }
    Verdict v;
    v.check = "dimension";
    auto pts = measure::membership_boundary(ps, p.grid);
    auto est = measure::box_counting_dimension(pts, measure::default_scales(std::max(ps.hi.x - ps.lo.x, ps.hi.y - ps.lo.y)));
    r.dimension = est;
    double expected = r.spec.expect.dimension.value_or(1.0);
    v.measured = est.slope;
    v.bound = expected;
    v.pass = std::fabs(est.slope - expected) <= r.spec.expect.dimension_tol;
    v.detail = "slope=" + fmt(est.slope) + " expected=" + fmt(expected) + " tol=" + fmt(r.spec.expect.dimension_tol) +
               " points=" + std::to_string(pts.size());
    r.verdicts.push_back(v);
  }
}

void run_line(SceneResult& r) {
  const auto& l = r.spec.line;
  auto m = metric_lab::parse_line_metric(l.metric);
  r.intervals = metric_lab::line_equidistant(m, l.p, l.q, l.lo, l.hi, l.resolution);
  for (const auto& check : r.spec.checks) {
    if (check != "line_intervals") {
      r.verdicts.push_back(not_applicable(check, "line scene"));
      continue;
    }
    Verdict v;
    v.check = "line_intervals";
    const auto& want = r.spec.expect.intervals;
    double worst = 0.0;
    bool ok = !want.empty() && want.size() == r.intervals.size();
    for (std::size_t i = 0; ok && i < want.size(); ++i) {
      const auto& got = r.intervals[i];
      bool want_interval = want[i][0] != want[i][1];
      if (want_interval != got.interval) ok = false;
      worst = std::max({worst, std::fabs(got.lo - want[i][0]), std::fabs(got.hi - want[i][1])});
    }
    v.measured = worst;
    v.bound = l.resolution;
    v.pass = want.empty() ? true : ok && worst < l.resolution;
    v.detail = "pieces=" + std::to_string(r.intervals.size()) + " max_endpoint_error=" + fmt(worst);
    if (want.empty()) v.applicable = false;
    r.verdicts.push_back(v);
  }
}

}  // namespace

SceneResult run_scene(const SceneSpec& spec_in, const RunOptions& opt) {
  SceneResult r;
  r.spec = spec_in;
  if (opt.h > 0.0) r.spec.h = opt.h;
  if (!opt.checks.empty()) r.spec.checks = opt.checks;
  if (opt.seed) r.spec.seed = *opt.seed;
  for (const auto& c : r.spec.checks) {
    const auto& known = scene::known_checks();
    if (std::find(known.begin(), known.end(), c) == known.end()) throw InputError("unknown check '" + c + "'");
  }
  r.hash = scene::hex64(scene::scene_hash(r.spec));
  switch (r.spec.kind) {
    case SceneKind::kSurface: run_surface(r, opt); break;
    case SceneKind::kPlanar: run_planar(r); break;
    case SceneKind::kLine: run_line(r); break;
  }
  return r;
}

}  // namespace mediatrix::pipeline
