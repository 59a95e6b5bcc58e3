#include "mediatrix/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace mediatrix::topology {

using equidistant::NodeKind;
using metric::SurfacePoint;

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

ComplexTopology cycle_rank(const EquidistantComplex& c) {
  ComplexTopology t;
  t.V = static_cast<int>(c.nodes.size());
  t.Eg = static_cast<int>(c.edges.size());
  UnionFind uf(t.V);
  int merges = 0;
  for (const auto& e : c.edges) merges += uf.unite(e.from, e.to);
  t.C = t.V - merges;
  t.beta1 = t.Eg - t.V + t.C;
  for (const auto& n : c.nodes) {
    if (n.kind == NodeKind::kWindowClipped) continue;
    t.degree_histogram[n.degree]++;
    if (n.degree % 2 != 0) t.even_degrees = false;
  }
  return t;
}

int surface_h1_z2(const TriSurface& s) {
  if (!s.closed()) throw InputError("surface_h1_z2: surface has boundary");
  return 2 - s.euler_characteristic();
}

int focal_components(const SampleSet& ss, const FocalSet& k, double radius) {
  if (k.empty()) throw InputError("focal_components: empty focal set");
  std::vector<FocalSet> elements;
  for (const auto& p : k.points) {
    FocalSet e;
    e.points.push_back(p);
    elements.push_back(e);
  }
  if (!k.seeds.empty()) {
    std::vector<int> index(ss.size(), -1);
    for (int i = 0; i < static_cast<int>(k.seeds.size()); ++i) index[k.seeds[i].sample] = i;
    UnionFind uf(static_cast<int>(k.seeds.size()));
    const TriSurface& s = ss.surface();
    for (int f = 0; f < s.num_faces(); ++f) {
      int first = -1;
      for (const auto& fs : ss.on_face(f)) {
        int i = index[fs.id];
        if (i < 0) continue;
        if (first < 0) first = i;
        else uf.unite(first, i);
      }
    }
    std::map<int, int> group;
    for (int i = 0; i < static_cast<int>(k.seeds.size()); ++i) {
      int r = uf.find(i);
      auto [it, fresh] = group.try_emplace(r, static_cast<int>(elements.size()));
      if (fresh) elements.emplace_back();
      elements[it->second].seeds.push_back(k.seeds[i]);
    }
  }
  const int n = static_cast<int>(elements.size());
  if (n == 1) return 1;
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    auto field = metric::distance_to_set(ss, elements[i]);
    for (int j = i + 1; j < n; ++j) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& p : elements[j].points) d = std::min(d, metric::evaluate(field, p));
      for (const auto& sd : elements[j].seeds) d = std::min(d, std::max(0.0, field.at(sd.sample) - sd.dist));
      if (d <= radius) uf.unite(i, j);
    }
  }
  int count = 0;
  for (int i = 0; i < n; ++i) count += uf.find(i) == i;
  return count;
}

SideLabeling side_labeling(const EquidistantComplex& c, int h0a, int h0b) {
  const auto& f = *c.field;
  const TriSurface& s = f.surface();
  const auto& grid = c.grid;
  SideLabeling out;
  out.h0a = h0a;
  out.h0b = h0b;

  // Sub-grid nodes to drop around junctions.
  std::vector<char> dropped(grid.num_nodes, 0);
  for (const auto& n : c.nodes)
    for (int x : n.absorbed) dropped[c.crossings[x].lo] = dropped[c.crossings[x].hi] = 1;

  // Complement of E in the sub-grid.
  std::set<std::pair<int, int>> cut;
  for (const auto& x : c.crossings) cut.insert({x.lo, x.hi});
  UnionFind uf(grid.num_nodes);
  std::vector<char> present(grid.num_nodes, 0);
  for (const auto& tri : grid.triangles)
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      present[a] = 1;
      if (dropped[a] || dropped[b]) continue;
      if (cut.count({std::min(a, b), std::max(a, b)})) continue;
      uf.unite(a, b);
    }
  for (int v = 0; v < grid.num_nodes; ++v) {
    if (!present[v] || dropped[v] || uf.find(v) != v) continue;
    out.complement_components++;
    (grid.values[v] < 0.0 ? out.complement_a : out.complement_b)++;
  }

  // Face labels from centroid signs.
  std::vector<char> face_dropped(s.num_faces(), 0);
  for (const auto& tri : grid.triangles)
    if (dropped[tri[0]] || dropped[tri[1]] || dropped[tri[2]]) face_dropped[tri[3]] = 1;
  out.face_label.assign(s.num_faces(), -1);
  for (int g = 0; g < s.num_faces(); ++g) {
    if (face_dropped[g]) continue;
    const auto& l = s.layout(g);
    SurfacePoint x{g, (l[0] + l[1] + l[2]) * (1.0 / 3.0)};
    out.face_label[g] = f.perturbed(f.evaluate(x)) < 0.0 ? 0 : 1;
  }
  UnionFind fu(s.num_faces());
  for (int e = 0; e < s.num_edges(); ++e) {
    const auto& ed = s.edge(e);
    if (ed.f1 < 0) continue;
    int a = out.face_label[ed.f0], b = out.face_label[ed.f1];
    if (a >= 0 && a == b) fu.unite(ed.f0, ed.f1);
  }
  for (int g = 0; g < s.num_faces(); ++g) {
    if (out.face_label[g] < 0 || fu.find(g) != g) continue;
    (out.face_label[g] == 0 ? out.ell_a : out.ell_b)++;
  }
  return out;
}

CheckResult homology_bound_check(const ComplexTopology& t, int h1x, const SideLabeling& l) {
  CheckResult r;
  r.check = "homology_bound";
  r.measured = t.beta1;
  r.bound = h1x + l.h0a + l.h0b - 1;
  bool ok = t.beta1 >= 1 && t.beta1 <= r.bound;
  std::ostringstream os;
  os << "beta1=" << t.beta1 << " h1X=" << h1x << " h0A=" << l.h0a << " h0B=" << l.h0b;
  if (l.h0a == 1 && l.h0b == 1) {
    ok = ok && t.beta1 <= h1x + 1;
    os << " connected bound=" << h1x + 1;
  }
  bool sides = l.ell_a >= 1 && l.ell_b >= 1 && l.ell_a <= l.h0a && l.ell_b <= l.h0b;
  os << " ellA=" << l.ell_a << " ellB=" << l.ell_b;
  r.pass = ok && sides;
  r.detail = os.str();
  return r;
}

CheckResult minimal_separating_check(const EquidistantComplex& c, const SideLabeling& l, double offset) {
  CheckResult r;
  r.check = "minimal_separating";
  const auto& f = *c.field;
  const TriSurface& s = f.surface();
  if (offset <= 0.0) offset = 0.5 * c.h;
  int tested = 0, flanked = 0;
  for (const auto& sp : equidistant::sample_edges(c, c.h, 3.0 * c.h)) {
    auto t = equidistant::tangent_angle(c, sp.edge, sp.s, 3.0 * c.h);
    if (!t) continue;
    double plus, minus;
    try {
      plus = f.evaluate(metric::geodesic_walk(s, sp.where, *t + kPi / 2, offset));
      minus = f.evaluate(metric::geodesic_walk(s, sp.where, *t - kPi / 2, offset));
    } catch (const ResolutionError&) {
      continue;
    }
    ++tested;
    if ((plus < 0.0) != (minus < 0.0)) ++flanked;
  }
  r.measured = l.complement_components;
  r.bound = l.ell_a + l.ell_b;
  bool counts = l.complement_components == l.ell_a + l.ell_b;
  r.pass = counts && tested > 0 && flanked == tested;
  std::ostringstream os;
  os << "components=" << l.complement_components << " ellA+ellB=" << l.ell_a + l.ell_b << " flanked=" << flanked
     << "/" << tested;
  r.detail = os.str();
  return r;
}

CheckResult one_manifold_check(const EquidistantComplex& c) {
  CheckResult r;
  r.check = "one_manifold";
  auto t = cycle_rank(c);
  int bad = 0;
  for (const auto& n : c.nodes)
    if (n.kind != NodeKind::kWindowClipped && n.degree != 2) ++bad;
  r.measured = t.C;
  r.bound = 1;
  r.pass = bad == 0 && t.C == 1;
  const TriSurface& s = c.field->surface();
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < c.nodes.size(); ++j) {
      const auto& a = c.nodes[i];
      const auto& b = c.nodes[j];
      if (a.kind != NodeKind::kWindowClipped || b.kind != NodeKind::kWindowClipped) continue;
      if (s.has_positions() && distance(metric::embed(s, a.where), metric::embed(s, b.where)) < 2.0 * c.h)
        r.inconclusive = true;
    }
  std::ostringstream os;
  os << "components=" << t.C << " nodes_not_degree_2=" << bad;
  if (r.inconclusive) os << " tangential_exit";
  r.detail = os.str();
  return r;
}

}  // namespace mediatrix::topology
