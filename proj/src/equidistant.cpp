#include "mediatrix/equidistant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

namespace mediatrix::equidistant {

using metric::FaceSample;
using surface::Transform2;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ----------------------------------------------------------------------------
// Signed field
// ----------------------------------------------------------------------------

SignedField::SignedField(const DistanceField& a, const DistanceField& b, int bias)
    : a_(&a), b_(&b), bias_(bias >= 0 ? 1 : -1) {
  if (&a.samples() != &b.samples() || a.size() != b.size())
    throw InputError("signed_field: fields live on different sample sets");
  values_.resize(a.size());
  double diam = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    values_[i] = a.at(i) - b.at(i);
    diam = std::max({diam, a.at(i), b.at(i)});
  }
  eps_zero_ = 1e-9 * std::max(diam, 1e-300);
}

double SignedField::evaluate(const SurfacePoint& x) const {
  return metric::evaluate(*a_, x) - metric::evaluate(*b_, x);
}

SignedField SignedField::relabeled() const { return SignedField(*b_, *a_, -bias_); }

SignedField signed_field(const DistanceField& a, const DistanceField& b) { return SignedField(a, b, +1); }

double focal_separation(const DistanceField& a, const DistanceField& b) {
  double best = kInf;
  auto one_way = [&](const DistanceField& from, const DistanceField& to) {
    for (const auto& p : from.focal().points) best = std::min(best, metric::evaluate(to, p));
    for (int i = 0; i < from.size(); ++i)
      if (from.at(i) == 0.0) best = std::min(best, to.at(i));
  };
  one_way(a, b);
  one_way(b, a);
  return best;
}

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kJunction: return "junction";
    case NodeKind::kWindowClipped: return "window_clipped";
    case NodeKind::kLoopMarker: return "loop_marker";
  }
  return "?";
}

// ----------------------------------------------------------------------------
// Extraction
// ----------------------------------------------------------------------------

namespace {

struct Lattice {
  const SampleSet* ss;
  int n;
  int nint;

  int node(int f, int i, int j) const {
    const TriSurface& s = ss->surface();
    const auto& tri = s.face(f);
    if (i == 0 && j == 0) return tri[0];
    if (i == n) return tri[1];
    if (j == n) return tri[2];
    int edge_local = -1, from_corner = -1, steps = 0;
    if (j == 0) edge_local = 0, from_corner = 0, steps = i;
    else if (i + j == n) edge_local = 1, from_corner = 1, steps = j;
    else if (i == 0) edge_local = 2, from_corner = 2, steps = n - j;
    if (edge_local >= 0) {
      int e = s.face_edge(f, edge_local);
      int k = tri[from_corner] == s.edge(e).v0 ? steps : n - steps;
      return ss->edge_sample(e, k);
    }
    // interior: i >= 1, j >= 1, i + j <= n - 1
    int idx = 0;
    for (int ii = 1; ii < i; ++ii) idx += n - 1 - ii;
    idx += j - 1;
    return ss->size() + f * nint + idx;
  }

  Vec2 position(int f, int i, int j) const {
    const auto& l = ss->surface().layout(f);
    double w0 = static_cast<double>(n - i - j) / n, w1 = static_cast<double>(i) / n,
           w2 = static_cast<double>(j) / n;
    return l[0] * w0 + l[1] * w1 + l[2] * w2;
  }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Chain {
  std::vector<int> crossings;
  std::vector<int> faces;  // faces[i] carries the segment crossings[i] -> crossings[i+1]
  bool closed = false;     // closed chains carry a closing segment in faces.back()
  std::vector<double> arc; // cumulative arc length at each crossing
};

// Rigid frames of the faces around a face (union of its vertex stars).
class Frames {
 public:
  explicit Frames(const TriSurface& s) : s_(&s) {}

  const std::map<int, Transform2>& around(int f) {
    auto it = cache_.find(f);
    if (it != cache_.end()) return it->second;
    std::vector<int> allowed;
    for (int v : s_->face(f))
      for (const auto& c : s_->star(v).corners) allowed.push_back(c.face);
    std::sort(allowed.begin(), allowed.end());
    std::map<int, Transform2> out;
    out[f] = Transform2{};
    std::queue<int> q;
    q.push(f);
    while (!q.empty()) {
      int g = q.front();
      q.pop();
      for (int i = 0; i < 3; ++i) {
        int k = s_->other_face(s_->face_edge(g, i), g);
        if (k < 0 || out.count(k) || !std::binary_search(allowed.begin(), allowed.end(), k)) continue;
        // frame of k -> frame of f
        out[k] = out[g].compose(s_->unfold(k, g));
        q.push(k);
      }
    }
    return cache_.emplace(f, std::move(out)).first->second;
  }

  /// Point given in face g, expressed in the frame of f (if g is near f).
  std::optional<Vec2> develop(int g, Vec2 p, int f) {
    const auto& m = around(f);
    auto it = m.find(g);
    if (it == m.end()) return std::nullopt;
    return it->second.apply(p);
  }

 private:
  const TriSurface* s_;
  std::map<int, std::map<int, Transform2>> cache_;
};

}  // namespace

double EquidistantComplex::total_length() const {
  double l = 0.0;
  for (const auto& e : edges) l += e.length;
  return l;
}

int EquidistantComplex::count(NodeKind k) const {
  int c = 0;
  for (const auto& n : nodes) c += n.kind == k;
  return c;
}

SurfacePoint EquidistantComplex::point_on_edge(int e, double s) const {
  const auto& ed = edges[e];
  double acc = 0.0;
  for (const auto& seg : ed.segments) {
    double l = seg.length();
    if (s <= acc + l || &seg == &ed.segments.back()) {
      double w = l > 0.0 ? std::clamp((s - acc) / l, 0.0, 1.0) : 0.0;
      return {seg.face, lerp(seg.a, seg.b, w)};
    }
    acc += l;
  }
  return nodes[ed.from].where;
}

bool EquidistantComplex::same_as(const EquidistantComplex& o) const {
  if (nodes.size() != o.nodes.size() || edges.size() != o.edges.size()) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& a = nodes[i];
    const auto& b = o.nodes[i];
    if (a.kind != b.kind || a.degree != b.degree || a.crossing != b.crossing || a.where.face != b.where.face ||
        !(a.where.p == b.where.p) || a.absorbed != b.absorbed)
      return false;
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& a = edges[i];
    const auto& b = o.edges[i];
    if (a.from != b.from || a.to != b.to || a.crossings != b.crossings || a.length != b.length) return false;
  }
  return true;
}

EquidistantComplex extract_equidistant(const SignedField& f, const ExtractOptions& opt) {
  const SampleSet& ss = f.samples();
  const TriSurface& s = ss.surface();
  EquidistantComplex cx;
  cx.field = &f;
  cx.h = opt.h > 0.0 ? opt.h : (s.target_h() > 0.0 ? s.target_h() : s.mean_edge_length());
  cx.snap = opt.snap_factor * cx.h;
  if (opt.enforce_separation) {
    double sep = focal_separation(f.a(), f.b());
    if (sep <= opt.min_separation_factor * cx.h)
      throw GeometryError("focal sets are " + std::to_string(sep) + " apart, below " +
                          std::to_string(opt.min_separation_factor) + "h = " +
                          std::to_string(opt.min_separation_factor * cx.h) + "; extraction refused");
  }

  // Sub-grid nodes and values.
  const int n = ss.divisions();
  Lattice lat{&ss, n, (n - 1) * (n - 2) / 2};
  SubGrid& grid = cx.grid;
  grid.divisions = n;
  grid.num_nodes = ss.size() + s.num_faces() * lat.nint;
  grid.values.assign(grid.num_nodes, 0.0);
  grid.interior.resize(static_cast<std::size_t>(s.num_faces()) * lat.nint);
  for (int id = 0; id < ss.size(); ++id) grid.values[id] = f.perturbed(f.at(id));
  for (int fc = 0; fc < s.num_faces(); ++fc)
    for (int i = 1; i < n; ++i)
      for (int j = 1; i + j < n; ++j) {
        int id = lat.node(fc, i, j);
        SurfacePoint x{fc, lat.position(fc, i, j)};
        grid.interior[id - ss.size()] = x;
        grid.values[id] = f.perturbed(f.evaluate(x));
      }

  // Marching triangles.
  std::map<std::pair<int, int>, int> crossing_of;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbour crossing, face)
  std::vector<std::vector<int>> crossing_faces;
  auto crossing = [&](int fc, int u, Vec2 pu, int v, Vec2 pv) {
    int lo = std::min(u, v), hi = std::max(u, v);
    Vec2 plo = u == lo ? pu : pv, phi = u == lo ? pv : pu;
    auto [it, fresh] = crossing_of.try_emplace({lo, hi}, static_cast<int>(cx.crossings.size()));
    if (fresh) {
      double flo = grid.values[lo], fhi = grid.values[hi];
      double t = flo / (flo - fhi);
      cx.crossings.push_back({lo, hi, t, {fc, lerp(plo, phi, t)}});
      adj.emplace_back();
      crossing_faces.emplace_back();
    }
    auto& cf = crossing_faces[it->second];
    if (std::find(cf.begin(), cf.end(), fc) == cf.end()) cf.push_back(fc);
    return it->second;
  };
  for (int fc = 0; fc < s.num_faces(); ++fc) {
    auto emit = [&](std::array<std::pair<int, int>, 3> ij) {
      int id[3];
      Vec2 p[3];
      for (int k = 0; k < 3; ++k) {
        id[k] = lat.node(fc, ij[k].first, ij[k].second);
        p[k] = lat.position(fc, ij[k].first, ij[k].second);
      }
      grid.triangles.push_back({id[0], id[1], id[2], fc});
      int found[2], nf = 0;
      for (int k = 0; k < 3; ++k) {
        int a = k, b = (k + 1) % 3;
        if ((grid.values[id[a]] < 0.0) != (grid.values[id[b]] < 0.0))
          found[nf++] = crossing(fc, id[a], p[a], id[b], p[b]);
      }
      if (nf == 2) {
        adj[found[0]].push_back({found[1], fc});
        adj[found[1]].push_back({found[0], fc});
      }
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; i + j < n; ++j) {
        emit({std::pair{i, j}, std::pair{i + 1, j}, std::pair{i, j + 1}});
        if (i + j + 1 < n) emit({std::pair{i + 1, j}, std::pair{i + 1, j + 1}, std::pair{i, j + 1}});
      }
  }

  const int nc = static_cast<int>(cx.crossings.size());
  Frames frames(s);
  auto pos_in = [&](int c, int face) -> std::optional<Vec2> {
    const auto& w = cx.crossings[c].where;
    if (w.face == face) return w.p;
    return frames.develop(w.face, w.p, face);
  };
  auto seg_length = [&](int c0, int c1, int face) {
    return distance(*pos_in(c0, face), *pos_in(c1, face));
  };

  // Chains.
  std::vector<Chain> chains;
  std::vector<int> chain_of(nc, -1), index_in_chain(nc, -1);
  auto walk = [&](int start, bool closed) {
    Chain ch;
    ch.closed = closed;
    int prev = -1, prev_face = -1, cur = start;
    while (true) {
      chain_of[cur] = static_cast<int>(chains.size());
      index_in_chain[cur] = static_cast<int>(ch.crossings.size());
      ch.crossings.push_back(cur);
      int next = -1, face = -1;
      bool skipped = false;
      for (auto [nb, fc] : adj[cur]) {
        if (!skipped && nb == prev && fc == prev_face) {
          skipped = true;
          continue;
        }
        if (chain_of[nb] < 0 || (closed && nb == start)) {
          next = nb;
          face = fc;
          break;
        }
      }
      if (next < 0) break;
      ch.faces.push_back(face);
      if (closed && next == start) break;
      prev = cur;
      prev_face = face;
      cur = next;
    }
    ch.arc.assign(ch.crossings.size(), 0.0);
    for (std::size_t i = 1; i < ch.crossings.size(); ++i)
      ch.arc[i] = ch.arc[i - 1] + seg_length(ch.crossings[i - 1], ch.crossings[i], ch.faces[i - 1]);
    chains.push_back(std::move(ch));
  };
  for (int c = 0; c < nc; ++c)
    if (chain_of[c] < 0 && adj[c].size() == 1) walk(c, false);
  for (int c = 0; c < nc; ++c)
    if (chain_of[c] < 0) walk(c, true);

  auto chain_length = [&](const Chain& ch) {
    double l = ch.arc.back();
    if (ch.closed && ch.faces.size() == ch.crossings.size())
      l += seg_length(ch.crossings.back(), ch.crossings.front(), ch.faces.back());
    return l;
  };
  auto arc_gap = [&](int c0, int c1) {
    const Chain& ch = chains[chain_of[c0]];
    double d = std::fabs(ch.arc[index_in_chain[c0]] - ch.arc[index_in_chain[c1]]);
    if (ch.closed) d = std::min(d, chain_length(ch) - d);
    return d;
  };

  // Near contacts between distinct arcs.
  std::map<int, std::vector<int>> on_face;
  for (int c = 0; c < nc; ++c)
    for (int fc : crossing_faces[c]) on_face[fc].push_back(c);
  UnionFind uf(nc);
  std::vector<bool> in_contact(nc, false);
  std::map<std::pair<int, int>, double> contact_dist;
  for (const auto& [fc, list] : on_face) {
    std::vector<std::pair<int, Vec2>> near;
    for (const auto& [g, tr] : frames.around(fc)) {
      auto it = on_face.find(g);
      if (it == on_face.end()) continue;
      for (int c : it->second) {
        auto p = pos_in(c, fc);
        if (p) near.push_back({c, *p});
      }
    }
    for (int c : list) {
      Vec2 pc = *pos_in(c, fc);
      for (const auto& [d, pd] : near) {
        if (d <= c) continue;
        double dist = distance(pc, pd);
        if (dist >= cx.snap) continue;
        bool distinct = chain_of[c] != chain_of[d] || arc_gap(c, d) > 4.0 * cx.snap;
        if (!distinct) continue;
        uf.unite(c, d);
        in_contact[c] = in_contact[d] = true;
        auto key = std::pair{c, d};
        auto it = contact_dist.find(key);
        if (it == contact_dist.end() || dist < it->second) contact_dist[key] = dist;
      }
    }
  }
  auto pair_dist = [&](int c, int d) {
    if (c == d) return 0.0;
    auto it = contact_dist.find({std::min(c, d), std::max(c, d)});
    if (it != contact_dist.end()) return it->second;
    const auto& wc = cx.crossings[c].where;
    auto p = pos_in(d, wc.face);
    return p ? distance(wc.p, *p) : kInf;
  };

  // Clusters -> junction centres (medoid).
  std::map<int, std::vector<int>> clusters;
  for (int c = 0; c < nc; ++c)
    if (in_contact[c]) clusters[uf.find(c)].push_back(c);
  std::map<int, int> junction_node;  // cluster root -> node id
  std::map<int, int> centre;         // cluster root -> centre crossing
  for (const auto& [root, members] : clusters) {
    int best = members.front();
    double best_sum = kInf;
    for (int c : members) {
      double sum = 0.0;
      for (int d : members) sum += std::min(pair_dist(c, d), cx.snap);
      if (sum < best_sum) best_sum = sum, best = c;
    }
    centre[root] = best;
    junction_node[root] = static_cast<int>(cx.nodes.size());
    Node nd;
    nd.kind = NodeKind::kJunction;
    nd.where = cx.crossings[best].where;
    nd.crossing = best;
    cx.nodes.push_back(nd);
  }

  // Per chain: runs of cluster crossings become junction attachments.
  struct Run {
    int first = 0, last = 0;  // chain indices (inclusive, may wrap for closed chains)
    int root = -1;
    int rep = -1;             // chain index of the attachment crossing
  };
  auto add_edge = [&](const Chain& ch, int from_node, int to_node, const std::vector<int>& idx,
                      int head_centre, int tail_centre) {
    PolyEdge e;
    e.from = from_node;
    e.to = to_node;
    auto connect = [&](int c, int centre_c, bool at_head) {
      if (centre_c < 0 || centre_c == c) return;
      const auto& w = cx.crossings[c].where;
      auto p = pos_in(centre_c, w.face);
      Vec2 q = p ? *p : w.p;
      Segment sg = at_head ? Segment{w.face, q, w.p} : Segment{w.face, w.p, q};
      e.segments.push_back(sg);
    };
    connect(ch.crossings[idx.front()], head_centre, true);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
      int i0 = idx[k], i1 = idx[k + 1];
      int fc = ch.faces[i0];
      int c0 = ch.crossings[i0], c1 = ch.crossings[i1];
      e.segments.push_back({fc, *pos_in(c0, fc), *pos_in(c1, fc)});
    }
    connect(ch.crossings[idx.back()], tail_centre, false);
    for (int i : idx) e.crossings.push_back(ch.crossings[i]);
    for (const auto& sg : e.segments) e.length += sg.length();
    cx.edges.push_back(std::move(e));
    cx.nodes[from_node].degree++;
    cx.nodes[to_node].degree++;
  };

  for (const Chain& ch : chains) {
    const int m = static_cast<int>(ch.crossings.size());
    auto root_of = [&](int i) { return in_contact[ch.crossings[i]] ? uf.find(ch.crossings[i]) : -1; };
    // Start position: for closed chains rotate so index 0 is outside any run.
    int offset = 0;
    if (ch.closed) {
      int best = -1;
      double best_clear = -1.0;
      for (int i = 0; i < m; ++i) {
        if (root_of(i) >= 0) continue;
        // distance along the chain to the nearest contact crossing
        double clear = kInf;
        for (int k = 0; k < m; ++k)
          if (root_of(k) >= 0) clear = std::min(clear, arc_gap(ch.crossings[i], ch.crossings[k]));
        if (clear > best_clear + 1e-15) best_clear = clear, best = i;
        if (clear == kInf) break;
      }
      if (best < 0) best = 0;
      offset = best;
    }
    auto at = [&](int k) { return (offset + k) % m; };
    auto arc_between = [&](int k0, int k1) {  // along the rotated order, k0 < k1
      double a0 = ch.arc[at(k0)], a1 = ch.arc[at(k1)];
      if (at(k1) < at(k0)) a1 += chain_length(ch);
      return a1 - a0;
    };

    std::vector<Run> runs;
    for (int k = 0; k < m; ++k) {
      int r = root_of(at(k));
      if (r < 0) continue;
      if (!runs.empty() && runs.back().root == r && arc_between(runs.back().last, k) < 2.0 * cx.snap) {
        runs.back().last = k;
      } else {
        runs.push_back({k, k, r, -1});
      }
    }
    for (auto& run : runs) {
      int c_star = centre[run.root];
      double best = kInf;
      for (int k = run.first; k <= run.last; ++k) {
        double d = pair_dist(ch.crossings[at(k)], c_star);
        if (d < best) best = d, run.rep = k;
      }
      for (int k = run.first; k <= run.last; ++k)
        cx.nodes[junction_node[run.root]].absorbed.push_back(ch.crossings[at(k)]);
    }

    auto indices = [&](int k0, int k1) {
      std::vector<int> idx;
      for (int k = k0; k <= k1; ++k) idx.push_back(at(k));
      return idx;
    };

    if (runs.empty()) {
      if (ch.closed) {
        Node nd;
        nd.kind = NodeKind::kLoopMarker;
        nd.crossing = ch.crossings[at(0)];
        nd.where = cx.crossings[nd.crossing].where;
        int id = static_cast<int>(cx.nodes.size());
        cx.nodes.push_back(nd);
        auto idx = indices(0, m - 1);
        idx.push_back(at(0));
        add_edge(ch, id, id, idx, -1, -1);
      } else {
        int a = static_cast<int>(cx.nodes.size());
        cx.nodes.push_back({NodeKind::kWindowClipped, cx.crossings[ch.crossings.front()].where, 0,
                            ch.crossings.front(), {}});
        int b = static_cast<int>(cx.nodes.size());
        cx.nodes.push_back({NodeKind::kWindowClipped, cx.crossings[ch.crossings.back()].where, 0,
                            ch.crossings.back(), {}});
        add_edge(ch, a, b, indices(0, m - 1), -1, -1);
      }
      continue;
    }

    // Pieces between consecutive runs.
    for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
      const Run& r0 = runs[r];
      const Run& r1 = runs[r + 1];
      add_edge(ch, junction_node[r0.root], junction_node[r1.root], indices(r0.rep, r1.rep),
               centre[r0.root], centre[r1.root]);
    }
    const Run& first = runs.front();
    const Run& last = runs.back();
    if (ch.closed) {
      // Wrap from the last run back to the first.
      std::vector<int> idx;
      for (int k = last.rep; k < m; ++k) idx.push_back(at(k));
      for (int k = 0; k <= first.rep; ++k) idx.push_back(at(k));
      add_edge(ch, junction_node[last.root], junction_node[first.root], idx, centre[last.root],
               centre[first.root]);
    } else {
      if (first.first > 0) {
        int a = static_cast<int>(cx.nodes.size());
        cx.nodes.push_back({NodeKind::kWindowClipped, cx.crossings[ch.crossings[at(0)]].where, 0,
                            ch.crossings[at(0)], {}});
        add_edge(ch, a, junction_node[first.root], indices(0, first.rep), -1, centre[first.root]);
      }
      if (last.last < m - 1) {
        int b = static_cast<int>(cx.nodes.size());
        cx.nodes.push_back({NodeKind::kWindowClipped, cx.crossings[ch.crossings[at(m - 1)]].where, 0,
                            ch.crossings[at(m - 1)], {}});
        add_edge(ch, junction_node[last.root], b, indices(last.rep, m - 1), centre[last.root], -1);
      }
    }
  }
  for (auto& nd : cx.nodes) std::sort(nd.absorbed.begin(), nd.absorbed.end());
  return cx;
}

// ----------------------------------------------------------------------------
// Wedges, tangents, sampling
// ----------------------------------------------------------------------------

std::vector<Wedge> wedges_at(const SurfacePoint& x, const metric::DirectionSet& a, const metric::DirectionSet& b,
                             double total) {
  if (!(total > 0.0)) throw InputError("wedges_at: total angle must be positive");
  struct Dir {
    double angle;
    int tag;
  };
  std::vector<Dir> all;
  for (const auto& d : a.directions) all.push_back({wrap_angle(d.angle, total), 0});
  for (const auto& d : b.directions) all.push_back({wrap_angle(d.angle, total), 1});
  if (a.directions.empty() || b.directions.empty())
    throw InputError("wedges_at: both direction sets must be nonempty");
  std::sort(all.begin(), all.end(), [](const Dir& p, const Dir& q) {
    return p.angle < q.angle || (p.angle == q.angle && p.tag < q.tag);
  });
  const double diam = std::min(total / 2.0, kPi);
  std::vector<Wedge> out;
  const std::size_t n = all.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Dir& p = all[i];
    const Dir& q = all[(i + 1) % n];
    if (p.tag == q.tag) continue;
    Wedge w;
    w.base = x;
    w.from = p.angle;
    w.to = q.angle;
    w.from_tag = p.tag;
    w.width = q.angle - p.angle;
    if (w.width <= 0.0) w.width += total;
    w.bisector = wrap_angle(p.angle + w.width / 2.0, total);
    double angle = std::min(w.width, kPi);
    w.obtuse = w.width / 2.0 > diam - w.width / 2.0;
    w.predicted = w.obtuse ? diam - angle / 2.0 : angle / 2.0;
    out.push_back(w);
  }
  return out;
}

double bisector_residual(double tangent, const Wedge& w) {
  return std::min(metric::angle_between(tangent, w.bisector, kTwoPi),
                  metric::angle_between(tangent + kPi, w.bisector, kTwoPi));
}

namespace {

bool is_loop(const EquidistantComplex& c, int e) {
  const auto& ed = c.edges[e];
  return ed.from == ed.to && c.nodes[ed.from].kind == NodeKind::kLoopMarker;
}

}  // namespace

std::optional<double> tangent_angle(const EquidistantComplex& c, int e, double s, double window) {
  const auto& ed = c.edges[e];
  const TriSurface& surf = c.field->surface();
  const bool loop = is_loop(c, e);
  const double half = window / 2.0;
  if (!loop && (s - half < 0.0 || s + half > ed.length)) return std::nullopt;
  const int nseg = static_cast<int>(ed.segments.size());
  // locate s
  int k0 = 0;
  double acc = 0.0;
  for (; k0 < nseg; ++k0) {
    double l = ed.segments[k0].length();
    if (s <= acc + l || k0 == nseg - 1) break;
    acc += l;
  }
  const auto& base = ed.segments[k0];
  double l0 = base.length();
  Vec2 x = l0 > 0.0 ? lerp(base.a, base.b, std::clamp((s - acc) / l0, 0.0, 1.0)) : base.a;

  auto transfer = [&](int from_face, int to_face) -> std::optional<Transform2> {
    if (from_face == to_face) return Transform2{};
    for (int i = 0; i < 3; ++i)
      if (surf.other_face(surf.face_edge(from_face, i), from_face) == to_face) return surf.unfold(from_face, to_face);
    return std::nullopt;
  };

  // Walk forward and backward accumulating the developed endpoint.
  auto reach = [&](int dir) -> std::optional<Vec2> {
    Transform2 to_base;  // current segment frame -> base frame
    int k = k0;
    int face = base.face;
    double need = half;
    Vec2 from = x;  // in current segment frame
    Vec2 end = dir > 0 ? base.b : base.a;
    for (int guard = 0; guard < 100000; ++guard) {
      double avail = distance(from, end);
      if (avail >= need) {
        Vec2 p = from + (end - from) * (need / avail);
        return to_base.apply(p);
      }
      need -= avail;
      k += dir;
      if (k < 0 || k >= nseg) {
        if (!loop) return std::nullopt;
        k = (k + nseg) % nseg;
      }
      const auto& sg = ed.segments[k];
      auto t = transfer(sg.face, face);
      if (!t) return std::nullopt;
      to_base = to_base.compose(*t);
      face = sg.face;
      from = dir > 0 ? sg.a : sg.b;
      end = dir > 0 ? sg.b : sg.a;
    }
    return std::nullopt;
  };
  auto fwd = reach(+1);
  auto bwd = reach(-1);
  if (!fwd || !bwd) return std::nullopt;
  Vec2 d = *fwd - *bwd;
  if (norm(d) == 0.0) return std::nullopt;
  // Express in the frame of the face the sample point is reported in.
  return wrap_angle(std::atan2(d.y, d.x));
}

std::vector<SamplePoint> sample_edges(const EquidistantComplex& c, double step, double margin) {
  if (!(step > 0.0)) throw InputError("sample_edges: step must be positive");
  std::vector<SamplePoint> out;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) {
    const double len = c.edges[e].length;
    if (is_loop(c, e)) {
      for (double s = 0.0; s < len - 1e-12; s += step) out.push_back({e, s, c.point_on_edge(e, s)});
    } else {
      for (double s = margin; s <= len - margin + 1e-12; s += step) out.push_back({e, s, c.point_on_edge(e, s)});
    }
  }
  return out;
}

}  // namespace mediatrix::equidistant

namespace mediatrix::equidistant {

bool near_cone_point(const TriSurface& s, const SurfacePoint& x, double r, double min_defect) {
  auto seg_dist = [](Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    return distance(p, a + d * t);
  };
  std::map<int, Transform2> seen;
  seen[x.face] = Transform2{};
  std::queue<int> q;
  q.push(x.face);
  while (!q.empty()) {
    int g = q.front();
    q.pop();
    const auto& tri = s.face(g);
    const auto& l = s.layout(g);
    const Transform2& tg = seen[g];
    for (int i = 0; i < 3; ++i) {
      int v = tri[i];
      if (!s.is_boundary_vertex(v) && std::fabs(s.cone_angle(v) - kTwoPi) >= min_defect &&
          distance(tg.apply(l[i]), x.p) < r)
        return true;
    }
    for (int i = 0; i < 3; ++i) {
      if (seg_dist(x.p, tg.apply(l[i]), tg.apply(l[(i + 1) % 3])) >= r) continue;
      int k = s.other_face(s.face_edge(g, i), g);
      if (k < 0 || seen.count(k)) continue;
      seen[k] = tg.compose(s.unfold(k, g));
      q.push(k);
    }
  }
  return false;
}

}  // namespace mediatrix::equidistant
