#include "mediatrix/metric_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace mediatrix::metric {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxUpdates = 64;

double local_angle(Vec2 ref, Vec2 w) { return std::atan2(cross(ref, w), dot(ref, w)); }

double corner_start(const TriSurface& s, int v, int f) {
  for (const auto& c : s.star(v).corners)
    if (c.face == f) return c.start;
  throw Error("corner_start: face not in vertex star");
}

bool inside_face(const std::array<Vec2, 3>& l, Vec2 p, double tol) {
  for (int i = 0; i < 3; ++i) {
    Vec2 a = l[i], b = l[(i + 1) % 3];
    if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
  }
  return true;
}

}  // namespace

// ----------------------------------------------------------------------------
// Samples
// ----------------------------------------------------------------------------

SampleSet::SampleSet(const TriSurface& s, int steiner_per_edge)
    : surface_(&s), m_(steiner_per_edge), scale_(s.max_edge_length()) {
  if (m_ < 0) throw InputError("steiner density must be non-negative");
  const int nv = s.num_vertices();
  places_.resize(nv + s.num_edges() * m_);
  for (int v = 0; v < nv; ++v) places_[v].vertex = v;
  for (int e = 0; e < s.num_edges(); ++e)
    for (int k = 1; k <= m_; ++k) {
      auto& p = places_[edge_sample(e, k)];
      p.edge = e;
      p.t = static_cast<double>(k) / (m_ + 1);
    }
  face_samples_.resize(s.num_faces());
  across_.resize(s.num_faces());
  neighbours_.resize(s.num_faces());
  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& l = s.layout(f);
    const auto& tri = s.face(f);
    auto& fs = face_samples_[f];
    for (int i = 0; i < 3; ++i) fs.push_back({tri[i], l[i], -1, i});
    for (int i = 0; i < 3; ++i) {
      int e = s.face_edge(f, i);
      const auto& ed = s.edge(e);
      Vec2 a = l[s.local_index(f, ed.v0)], b = l[s.local_index(f, ed.v1)];
      for (int k = 1; k <= m_; ++k)
        fs.push_back({edge_sample(e, k), lerp(a, b, static_cast<double>(k) / (m_ + 1)), i, -1});
      int g = s.other_face(e, f);
      neighbours_[f][i] = g;
      across_[f][i] = g >= 0 ? s.unfold(f, g) : Transform2{};
    }
    std::sort(fs.begin(), fs.end(), [](const FaceSample& x, const FaceSample& y) { return x.id < y.id; });
  }
}

std::vector<int> SampleSet::faces_of(int id) const {
  std::vector<int> out;
  if (is_vertex(id)) {
    for (const auto& c : surface_->star(id).corners) out.push_back(c.face);
  } else {
    const auto& ed = surface_->edge(places_[id].edge);
    out.push_back(ed.f0);
    if (ed.f1 >= 0) out.push_back(ed.f1);
  }
  return out;
}

Vec2 SampleSet::in_face(int id, int f) const {
  for (const auto& fs : face_samples_[f])
    if (fs.id == id) return fs.p;
  throw Error("sample does not lie on face");
}

SurfacePoint SampleSet::location(int id) const {
  int f = faces_of(id).front();
  return {f, in_face(id, f)};
}

int SampleSet::local_edge(int f, int e) const {
  for (int i = 0; i < 3; ++i)
    if (surface_->face_edge(f, i) == e) return i;
  return -1;
}

// ----------------------------------------------------------------------------
// Point helpers
// ----------------------------------------------------------------------------

SurfacePoint vertex_point(const TriSurface& s, int v) {
  const auto& c = s.star(v).corners.front();
  return {c.face, s.layout(c.face)[c.corner]};
}

std::array<double, 3> barycentric(const TriSurface& s, const SurfacePoint& x) {
  const auto& l = s.layout(x.face);
  double area = cross(l[1] - l[0], l[2] - l[0]);
  double b1 = cross(x.p - l[0], l[2] - l[0]) / area;
  double b2 = cross(l[1] - l[0], x.p - l[0]) / area;
  return {1.0 - b1 - b2, b1, b2};
}

SurfacePoint from_barycentric(const TriSurface& s, int f, const std::array<double, 3>& b) {
  const auto& l = s.layout(f);
  return {f, l[0] * b[0] + l[1] * b[1] + l[2] * b[2]};
}

int near_vertex(const TriSurface& s, const SurfacePoint& x, double tol) {
  const auto& l = s.layout(x.face);
  for (int i = 0; i < 3; ++i)
    if (distance(l[i], x.p) <= tol) return s.face(x.face)[i];
  return -1;
}

int on_edge(const TriSurface& s, const SurfacePoint& x, double tol) {
  const auto& l = s.layout(x.face);
  for (int i = 0; i < 3; ++i) {
    Vec2 a = l[i], b = l[(i + 1) % 3];
    double len = norm(b - a);
    if (std::fabs(cross(b - a, x.p - a)) / len <= tol) return i;
  }
  return -1;
}

Vec3 embed(const TriSurface& s, const SurfacePoint& x) { return s.embed(x.face, barycentric(s, x)); }

namespace {

// Closest point on triangle abc to p, as barycentric weights.
std::array<double, 3> closest_on_triangle(Vec3 p, Vec3 a, Vec3 b, Vec3 c) {
  Vec3 ab = b - a, ac = c - a, ap = p - a;
  double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return {1, 0, 0};
  Vec3 bp = p - b;
  double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return {0, 1, 0};
  double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) {
    double v = d1 / (d1 - d3);
    return {1 - v, v, 0};
  }
  Vec3 cp = p - c;
  double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return {0, 0, 1};
  double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) {
    double w = d2 / (d2 - d6);
    return {1 - w, 0, w};
  }
  double va = d3 * d6 - d5 * d4;
  if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
    double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return {0, 1 - w, w};
  }
  double denom = 1.0 / (va + vb + vc);
  double v = vb * denom, w = vc * denom;
  return {1 - v - w, v, w};
}

}  // namespace

SurfacePoint locate(const TriSurface& s, Vec3 q, int sheet) {
  if (!s.has_positions()) throw InputError("surface has no embedding to locate points in");
  const auto& pos = s.positions();
  double best = kInf;
  SurfacePoint out;
  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& t = s.face(f);
    if (sheet >= 0 && !s.sheet().empty()) {
      bool ok = true;
      for (int v : t)
        if (s.sheet()[v] != sheet && s.sheet()[v] != 2) ok = false;
      if (!ok) continue;
    }
    auto b = closest_on_triangle(q, pos[t[0]], pos[t[1]], pos[t[2]]);
    Vec3 c = pos[t[0]] * b[0] + pos[t[1]] * b[1] + pos[t[2]] * b[2];
    double d = distance(c, q);
    if (d < best - 1e-15) {
      best = d;
      out = from_barycentric(s, f, b);
    }
  }
  if (out.face < 0) throw InputError("no face matches the requested sheet");
  return out;
}

SurfacePoint locate_uv(const TriSurface& s, Vec2 uv) {
  const auto& tex = s.uv();
  if (tex.empty()) throw InputError("surface has no uv chart");
  const double period = s.period();
  const bool torus = s.chart() == surface::Chart::kTorus;
  const bool cone = s.chart() == surface::Chart::kCone;
  if (!torus && !cone) throw InputError("uv location needs a torus or cone chart");
  auto planar = [&](Vec2 w, Vec2 ref) {
    if (torus) {
      w.x -= period * std::round((w.x - ref.x) / period);
      w.y -= period * std::round((w.y - ref.y) / period);
      return w;
    }
    double phi = w.y - period * std::round((w.y - ref.y) / period);
    return Vec2{w.x * std::cos(phi), w.x * std::sin(phi)};
  };
  double best = kInf;
  SurfacePoint out;
  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& t = s.face(f);
    // Reference angle: any corner off the apex.
    Vec2 ref = tex[t[0]];
    if (cone && ref.x == 0.0) ref = tex[t[1]];
    Vec2 a = planar(tex[t[0]], ref), b = planar(tex[t[1]], ref), c = planar(tex[t[2]], ref);
    Vec2 q = planar(uv, ref);
    Vec3 q3{q.x, q.y, 0}, a3{a.x, a.y, 0}, b3{b.x, b.y, 0}, c3{c.x, c.y, 0};
    auto w = closest_on_triangle(q3, a3, b3, c3);
    Vec3 p = a3 * w[0] + b3 * w[1] + c3 * w[2];
    double d = distance(p, q3);
    if (d < best - 1e-15) {
      best = d;
      out = from_barycentric(s, f, w);
    }
  }
  return out;
}

// ----------------------------------------------------------------------------
// Candidate evaluation
// ----------------------------------------------------------------------------

namespace {

// Virtual-source candidate offered by sample q (seen from face f) for a target
// y in f. Returns false when q's source is not visible from y.
bool virtual_candidate(const SampleSet& ss, const std::vector<SampleState>& states, int f,
                       const FaceSample& q, Vec2 y, Candidate& out) {
  const SampleState& st = states[q.id];
  if (st.src_face < 0) return false;
  const TriSurface& s = ss.surface();
  const auto& lf = s.layout(f);

  if (st.anchor == -2) {
    // Region seeds carry exact planar nearest points.
    Vec2 src = st.src;
    if (st.src_face != f) {
      if (q.local_edge >= 0) {
        int e = s.face_edge(f, q.local_edge);
        int i_src = ss.local_edge(st.src_face, e);
        if (i_src < 0) return false;
        src = ss.across(st.src_face, i_src).apply(src);
      } else {
        return false;
      }
    }
    out = {st.sigma + distance(src, y), src, st.sigma, st.anchor, true};
    return true;
  }

  if (q.corner >= 0) {
    const int v = q.id;
    const auto& ls = s.layout(st.src_face);
    int cs = s.local_index(st.src_face, v);
    Vec2 vs = ls[cs];
    double r = distance(st.src, vs);
    Vec2 vf = lf[q.corner];
    if (r <= 1e-14) {
      out = {st.sigma + distance(vf, y), vf, st.sigma, st.anchor, true};
      return true;
    }
    Vec2 ref_f = lf[(q.corner + 1) % 3] - vf;
    if (distance(y, vf) <= 1e-14) return false;
    double psi = corner_start(s, v, st.src_face) + local_angle(ls[(cs + 1) % 3] - vs, st.src - vs);
    double beta_f = corner_start(s, v, f);
    double chi = beta_f + local_angle(ref_f, y - vf);
    double theta = s.cone_angle(v);
    bool boundary = s.is_boundary_vertex(v);
    bool found = false;
    for (int k = boundary ? 0 : -1; k <= (boundary ? 0 : 1); ++k) {
      double pk = psi + k * theta;
      if (std::fabs(chi - pk) >= kPi - 1e-12) continue;
      double ang = std::atan2(ref_f.y, ref_f.x) + (pk - beta_f);
      Vec2 src = vf + Vec2{r * std::cos(ang), r * std::sin(ang)};
      double val = st.sigma + distance(src, y);
      if (!found || val < out.value) out = {val, src, st.sigma, st.anchor, true};
      found = true;
    }
    return found;
  }

  // Steiner sample on local edge i of f.
  const int i = q.local_edge;
  const int e = s.face_edge(f, i);
  Vec2 src = st.src;
  if (st.src_face != f) {
    int i_src = ss.local_edge(st.src_face, e);
    if (i_src < 0) return false;
    src = ss.across(st.src_face, i_src).apply(src);
  }
  const double scale = ss.scale();
  if (!inside_face(lf, src, 1e-9 * scale)) {
    Vec2 a = lf[i], b = lf[(i + 1) % 3];
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    double side = cross(ab, src - a);
    if (side > 1e-12 * len2) return false;  // source on this face's side but outside it
    double den = cross(ab, y - src);
    if (std::fabs(den) < 1e-300) return false;
    double u = -side / den;
    if (u < -1e-9 || u > 1.0 + 1e-9) return false;
    Vec2 p = src + (y - src) * u;
    double tc = dot(p - a, ab) / len2;
    double tq = dot(q.p - a, ab) / len2;
    double spacing = 1.0 / ss.divisions();
    if (tc < -1e-9 || tc > 1.0 + 1e-9 || std::fabs(tc - tq) > spacing + 1e-9) return false;
  }
  out = {st.sigma + distance(src, y), src, st.sigma, st.anchor, true};
  return true;
}

void face_candidates(const SampleSet& ss, const std::vector<SampleState>& states, int f, Vec2 y,
                     std::vector<Candidate>& out) {
  for (const auto& q : ss.on_face(f)) {
    const SampleState& st = states[q.id];
    if (!std::isfinite(st.dist)) continue;
    out.push_back({st.dist + distance(q.p, y), q.p, st.dist, q.id, false});
    Candidate c;
    if (virtual_candidate(ss, states, f, q, y, c)) out.push_back(c);
  }
}

}  // namespace

DistanceField::DistanceField(const SampleSet& samples, std::vector<SampleState> states, FocalSet focal)
    : samples_(&samples), states_(std::move(states)), focal_(std::move(focal)) {}

DistanceField distance_to_set(const SampleSet& ss, const FocalSet& focal) {
  if (focal.empty()) throw InputError("focal set is empty");
  const TriSurface& s = ss.surface();
  std::vector<SampleState> states(ss.size());
  for (auto& st : states) st.dist = kInf;

  auto seed_face = [&](int g, Vec2 x) {
    for (const auto& q : ss.on_face(g)) {
      double d = distance(x, q.p);
      if (d < states[q.id].dist) states[q.id] = {d, 0.0, g, x, -1};
    }
  };
  for (const auto& pt : focal.points) {
    int v = near_vertex(s, pt);
    if (v >= 0) {
      for (const auto& c : s.star(v).corners) seed_face(c.face, s.layout(c.face)[c.corner]);
      continue;
    }
    seed_face(pt.face, pt.p);
    int i = on_edge(s, pt);
    if (i >= 0 && ss.neighbour(pt.face, i) >= 0)
      seed_face(ss.neighbour(pt.face, i), ss.across(pt.face, i).apply(pt.p));
  }
  for (const auto& sd : focal.seeds) {
    if (sd.sample < 0 || sd.sample >= ss.size()) throw InputError("seed sample out of range");
    if (sd.dist < states[sd.sample].dist) states[sd.sample] = {sd.dist, 0.0, sd.face, sd.source, -2};
  }

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (int id = 0; id < ss.size(); ++id)
    if (std::isfinite(states[id].dist)) queue.push({states[id].dist, id});

  // Label correcting with a bounded number of improvements per sample; near
  // sharp cone points developed sources can keep undercutting each other.
  std::vector<int> updates(ss.size(), 0);
  while (!queue.empty()) {
    auto [d, id] = queue.top();
    queue.pop();
    if (d != states[id].dist) continue;

    for (int g : ss.faces_of(id)) {
      const FaceSample* fp = nullptr;
      for (const auto& fs : ss.on_face(g))
        if (fs.id == id) fp = &fs;
      for (const auto& q : ss.on_face(g)) {
        if (q.id == id) continue;
        const SampleState saved = states[q.id];
        double best = saved.dist;
        double slack = std::isfinite(best) ? 1e-12 * (1.0 + best) : 0.0;
        double c = d + distance(fp->p, q.p);
        bool improved = false;
        if (c < best - slack) {
          states[q.id] = {c, d, g, fp->p, id};
          best = c;
          improved = true;
        }
        Candidate vc;
        if (virtual_candidate(ss, states, g, *fp, q.p, vc) && vc.value < best - slack) {
          states[q.id] = {vc.value, vc.sigma, g, vc.source, vc.anchor};
          improved = true;
        }
        if (improved) {
          if (++updates[q.id] > kMaxUpdates) {
            states[q.id] = saved;
            continue;
          }
          queue.push({states[q.id].dist, q.id});
        }
      }
    }
  }
  for (const auto& st : states)
    if (!std::isfinite(st.dist)) throw Error("unreachable sample in distance propagation");
  return DistanceField(ss, std::move(states), focal);
}

std::vector<Candidate> candidates(const DistanceField& field, const SurfacePoint& x) {
  const SampleSet& ss = field.samples();
  const TriSurface& s = ss.surface();
  std::vector<Candidate> out;
  face_candidates(ss, field.states(), x.face, x.p, out);
  int i = on_edge(s, x);
  if (i >= 0 && ss.neighbour(x.face, i) >= 0) {
    int g = ss.neighbour(x.face, i);
    const Transform2& t = ss.across(x.face, i);
    std::vector<Candidate> other;
    face_candidates(ss, field.states(), g, t.apply(x.p), other);
    Transform2 back = t.inverse();
    for (auto c : other) {
      c.source = back.apply(c.source);
      out.push_back(c);
    }
  }
  // Focal points lying on the query face are visible directly.
  for (const auto& pt : field.focal().points) {
    if (pt.face == x.face) out.push_back({distance(pt.p, x.p), pt.p, 0.0, -1, true});
  }
  return out;
}

double evaluate(const DistanceField& field, const SurfacePoint& x) {
  double best = kInf;
  for (const auto& c : candidates(field, x)) best = std::min(best, c.value);
  return best;
}

// ----------------------------------------------------------------------------
// Walking
// ----------------------------------------------------------------------------

namespace {

struct Exit {
  double travel = kInf;
  int edge = -1;
};

Exit exit_face(const TriSurface& s, int f, Vec2 c, Vec2 u) {
  const auto& l = s.layout(f);
  Exit best;
  for (int i = 0; i < 3; ++i) {
    Vec2 a = l[i], b = l[(i + 1) % 3];
    double den = cross(b - a, u);
    if (den >= 0.0) continue;
    double lambda = -cross(b - a, c - a) / den;
    if (lambda < best.travel) best = {std::max(lambda, 0.0), i};
  }
  return best;
}

}  // namespace

SurfacePoint geodesic_walk(const TriSurface& s, const SurfacePoint& x, double angle, double t) {
  SurfacePoint cur = x;
  Vec2 u{std::cos(angle), std::sin(angle)};
  double left = t;
  const double vtol = 1e-9 * s.layout(x.face)[1].x;
  for (int guard = 0; guard < 1000000; ++guard) {
    Exit ex = exit_face(s, cur.face, cur.p, u);
    if (ex.edge < 0) throw ResolutionError("geodesic walk: no exit");
    if (ex.travel >= left) return {cur.face, cur.p + u * left};
    Vec2 y = cur.p + u * ex.travel;
    if (near_vertex(s, {cur.face, y}, vtol) >= 0) throw ResolutionError("geodesic walk hits a vertex");
    int e = s.face_edge(cur.face, ex.edge);
    int g = s.other_face(e, cur.face);
    if (g < 0) throw ResolutionError("geodesic walk leaves the surface");
    Transform2 tr = s.unfold(cur.face, g);
    left -= ex.travel;
    cur = {g, tr.apply(y)};
    u = tr.rotate(u);
  }
  throw ResolutionError("geodesic walk does not terminate");
}

GeodesicPath trace_from(const DistanceField& field, const SurfacePoint& x, const Candidate& start) {
  const SampleSet& ss = field.samples();
  const TriSurface& s = ss.surface();
  GeodesicPath path;
  path.points.push_back(x);
  path.arclength.push_back(0.0);
  SurfacePoint cur = x;
  Vec2 target = start.source;
  int anchor = start.anchor;
  const double vtol = 1e-9 * field.samples().scale();
  auto push = [&](SurfacePoint p, double step) {
    path.points.push_back(p);
    path.arclength.push_back(path.arclength.back() + step);
  };
  // Continue from sample a along its own stored source; the same location is
  // re-recorded in the new frame with a zero-length step.
  auto retarget = [&](int a) {
    const SampleState& st = field.state(a);
    if (st.dist == 0.0) return true;
    cur = {st.src_face, ss.in_face(a, st.src_face)};
    push(cur, 0.0);
    target = st.src;
    anchor = st.anchor;
    return false;
  };
  for (int guard = 0; guard < 1000000; ++guard) {
    double gap = distance(target, cur.p);
    bool arrived = gap <= 1e-14;
    if (!arrived) {
      Vec2 u = (target - cur.p) * (1.0 / gap);
      Exit ex = exit_face(s, cur.face, cur.p, u);
      if (ex.edge < 0 || ex.travel >= gap - 1e-14) {
        push({cur.face, target}, gap);
        cur.p = target;
        arrived = true;
      } else {
        Vec2 y = cur.p + u * ex.travel;
        int v = near_vertex(s, {cur.face, y}, vtol);
        if (v >= 0) {
          push({cur.face, y}, ex.travel);
          if (retarget(v)) return path;
          continue;
        }
        int g = ss.neighbour(cur.face, ex.edge);
        if (g < 0) {
          // Numerical drift pushed the walk against the boundary: fall back to
          // the sample graph from the nearest sample on this face.
          push({cur.face, y}, ex.travel);
          int nearest = -1;
          double dn = kInf;
          for (const auto& q : ss.on_face(cur.face))
            if (distance(q.p, y) < dn) dn = distance(q.p, y), nearest = q.id;
          push({cur.face, ss.in_face(nearest, cur.face)}, dn);
          if (retarget(nearest)) return path;
          continue;
        }
        push({cur.face, y}, ex.travel);
        const Transform2& tr = ss.across(cur.face, ex.edge);
        cur = {g, tr.apply(y)};
        push(cur, 0.0);
        target = tr.apply(target);
        continue;
      }
    }
    if (arrived) {
      if (anchor < 0) return path;
      if (retarget(anchor)) return path;
    }
  }
  throw ResolutionError("path trace does not terminate");
}

GeodesicPath trace_shortest_path(const DistanceField& field, const SurfacePoint& x) {
  auto cands = candidates(field, x);
  double best = kInf;
  for (const auto& c : cands) best = std::min(best, c.value);
  if (best <= 0.0) throw InputError("trace_shortest_path: point lies in the focal set");
  const Candidate* pick = nullptr;
  for (const auto& c : cands)
    if (c.straight && c.value <= best * (1.0 + 1e-9) && (!pick || c.value < pick->value)) pick = &c;
  if (!pick)
    for (const auto& c : cands)
      if (c.value == best) pick = &c;
  return trace_from(field, x, *pick);
}

SurfacePoint point_along(const TriSurface& s, const GeodesicPath& path, double t) {
  (void)s;
  if (path.points.empty()) throw InputError("empty path");
  if (t <= 0.0) return path.points.front();
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    double seg = path.arclength[i] - path.arclength[i - 1];
    if (path.arclength[i] >= t && seg > 0.0) {
      const SurfacePoint& a = path.points[i - 1];
      const SurfacePoint& b = path.points[i];
      double w = (t - path.arclength[i - 1]) / seg;
      return {b.face, lerp(a.p, b.p, w)};
    }
  }
  return path.points.back();
}

// ----------------------------------------------------------------------------
// Directions
// ----------------------------------------------------------------------------

double angle_between(double a1, double a2, double total) {
  if (!(total > 0.0)) throw InputError("angle_between: total angle must be positive");
  double d = std::fabs(wrap_angle(a1, total) - wrap_angle(a2, total));
  d = std::min(d, total - d);
  return std::min(d, kPi);
}

double cone_distance(double total, double angle1, double r1, double angle2, double r2) {
  if (r1 < 0.0 || r2 < 0.0) throw InputError("cone_distance: negative radius");
  double a = angle_between(angle1, angle2, total);
  double v = r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * std::cos(a);
  if (a == 0.0) return std::fabs(r1 - r2);
  return std::sqrt(std::max(v, 0.0));
}

double direction_threshold(double h, double d) { return std::max(8.0 * h / d, 0.05); }

DirectionSet directions(const DistanceField& field, const SurfacePoint& x, double h, double tol_rel) {
  const TriSurface& s = field.surface();
  if (near_vertex(s, x, 1e-9 * field.samples().scale()) >= 0)
    throw ResolutionError("direction sets at mesh vertices are not resolved");
  auto cands = candidates(field, x);
  double best = kInf;
  for (const auto& c : cands) best = std::min(best, c.value);
  if (best <= 0.0) throw InputError("directions: point lies in the focal set");
  // Sources stored on the neighbouring faces catch shortest paths whose
  // domain boundary passes within a face of x.
  const SampleSet& ss = field.samples();
  for (int i = 0; i < 3; ++i) {
    int g = ss.neighbour(x.face, i);
    if (g < 0) continue;
    const Transform2& t = ss.across(x.face, i);
    std::vector<Candidate> other;
    face_candidates(ss, field.states(), g, t.apply(x.p), other);
    Transform2 back = t.inverse();
    for (auto c : other) {
      if (!c.straight || c.value < best * (1.0 - tol_rel)) continue;
      c.source = back.apply(c.source);
      cands.push_back(c);
    }
  }

  std::vector<Direction> raw;
  for (const auto& c : cands)
    if (c.straight && c.value <= best * (1.0 + tol_rel))
      raw.push_back({wrap_angle(std::atan2(c.source.y - x.p.y, c.source.x - x.p.x)), 0, c.value, c.source,
                     c.sigma, c.anchor});
  if (raw.empty())
    for (const auto& c : cands)
      if (c.value == best) {
        raw.push_back({wrap_angle(std::atan2(c.source.y - x.p.y, c.source.x - x.p.x)), 0, c.value, c.source,
                     c.sigma, c.anchor});
        break;
      }
  std::sort(raw.begin(), raw.end(), [](const Direction& a, const Direction& b) {
    return a.angle < b.angle || (a.angle == b.angle && a.length < b.length);
  });

  DirectionSet out;
  out.base = x;
  out.total_angle = kTwoPi;
  out.delta = direction_threshold(h, best);
  const std::size_t n = raw.size();
  // Circular single-linkage clustering: start right after the widest gap.
  std::size_t start = 0;
  double widest = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double gap = i + 1 < n ? raw[i + 1].angle - raw[i].angle : raw[0].angle + kTwoPi - raw[i].angle;
    if (gap > widest) widest = gap, start = (i + 1) % n;
  }
  std::vector<Direction> reps;
  Direction cur = raw[start];
  for (std::size_t k = 1; k <= n; ++k) {
    if (k == n) {
      reps.push_back(cur);
      break;
    }
    const Direction& prev = raw[(start + k - 1) % n];
    const Direction& d = raw[(start + k) % n];
    double gap = wrap_angle(d.angle - prev.angle);
    if (gap > out.delta) {
      reps.push_back(cur);
      cur = d;
    } else if (d.length < cur.length) {
      cur = d;
    }
  }
  std::sort(reps.begin(), reps.end(), [](const Direction& a, const Direction& b) { return a.angle < b.angle; });
  out.directions = std::move(reps);
  return out;
}

std::pair<DirectionSet, DirectionSet> directions_at(const DistanceField& a, const DistanceField& b,
                                                    const SurfacePoint& x, double h, double tol_rel) {
  DirectionSet da = directions(a, x, h, tol_rel);
  DirectionSet db = directions(b, x, h, tol_rel);
  for (auto& d : db.directions) d.tag = 1;
  double delta = std::max(da.delta, db.delta);
  for (const auto& p : da.directions)
    for (const auto& q : db.directions)
      if (angle_between(p.angle, q.angle, kTwoPi) <= delta)
        throw ResolutionError("A- and B-directions closer than the clustering threshold");
  return {std::move(da), std::move(db)};
}

std::vector<SurfacePoint> metric_projection(const DistanceField& field, const SurfacePoint& x, double tol_rel) {
  if (evaluate(field, x) <= 0.0) return {x};
  const TriSurface& s = field.surface();
  double h = s.target_h() > 0.0 ? s.target_h() : s.mean_edge_length();
  DirectionSet ds = directions(field, x, h, tol_rel);
  std::vector<SurfacePoint> out;
  for (const auto& d : ds.directions) {
    Candidate c{d.length, d.source, d.sigma, d.anchor, true};
    auto path = trace_from(field, x, c);
    out.push_back(path.points.back());
  }
  return out;
}

DerivativeEstimate one_sided_derivative(const DistanceField& field, const SurfacePoint& x, double angle,
                                        const std::vector<double>& steps, double h) {
  if (steps.size() < 2) throw InputError("one_sided_derivative: need at least two steps");
  const TriSurface& s = field.surface();
  double d0 = evaluate(field, x);
  if (d0 <= 0.0) throw InputError("one_sided_derivative: point lies in the focal set");
  std::vector<double> fd;
  for (double t : steps) {
    if (!(t > 0.0)) throw InputError("one_sided_derivative: steps must be positive");
    SurfacePoint y;
    try {
      y = geodesic_walk(s, x, angle, t);
    } catch (const ResolutionError&) {
      throw ResolutionError("direction not realizable at the requested step");
    }
    fd.push_back((evaluate(field, y) - d0) / t);
  }
  std::size_t k = fd.size() - 1;
  double r = steps[k - 1] / steps[k];
  DerivativeEstimate out;
  out.estimate = (r * fd[k] - fd[k - 1]) / (r - 1.0);
  DirectionSet ds = directions(field, x, h);
  out.min_angle = kPi;
  for (const auto& d : ds.directions) out.min_angle = std::min(out.min_angle, angle_between(angle, d.angle, kTwoPi));
  out.predicted = -std::cos(out.min_angle);
  return out;
}

}  // namespace mediatrix::metric
