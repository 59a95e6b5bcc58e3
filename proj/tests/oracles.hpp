#pragma once

// Independent brute-force references for tests: analytic distances on the
// model surfaces and dense-grid sign analysis of f = d(., A) - d(., B).
// Nothing here touches the mesh or the propagation engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "mediatrix/common.hpp"

namespace oracle {

using mediatrix::kPi;
using mediatrix::kTwoPi;
using mediatrix::Vec2;
using mediatrix::Vec3;

// ---------------------------------------------------------------------------
// Analytic distances
// ---------------------------------------------------------------------------

inline Vec3 sphere_point(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

inline double sphere_distance(Vec3 a, Vec3 b) {
  return std::atan2(mediatrix::norm(mediatrix::cross(a, b)), mediatrix::dot(a, b));
}

inline double torus_distance(Vec2 a, Vec2 b, double side = 1.0) {
  double dx = std::fabs(a.x - b.x), dy = std::fabs(a.y - b.y);
  dx = std::fmod(dx, side), dy = std::fmod(dy, side);
  dx = std::min(dx, side - dx), dy = std::min(dy, side - dy);
  return std::hypot(dx, dy);
}

/// Point on the doubled unit disk: planar position and sheet.
struct DiskPoint {
  Vec2 p;
  int sheet;
};

inline double doubled_disk_distance(DiskPoint a, DiskPoint b) {
  if (a.sheet == b.sheet) return mediatrix::distance(a.p, b.p);
  auto through = [&](double t) {
    Vec2 q{std::cos(t), std::sin(t)};
    return mediatrix::distance(a.p, q) + mediatrix::distance(q, b.p);
  };
  const int n = 720;
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (through(kTwoPi * i / n) < through(kTwoPi * best / n)) best = i;
  double lo = kTwoPi * (best - 1) / n, hi = kTwoPi * (best + 1) / n;
  for (int it = 0; it < 100; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (through(m1) < through(m2)) hi = m2;
    else lo = m1;
  }
  return through(0.5 * (lo + hi));
}

inline double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 d = b - a;
  double t = std::clamp(mediatrix::dot(p - a, d) / mediatrix::dot(d, d), 0.0, 1.0);
  return mediatrix::distance(p, a + d * t);
}

inline bool inside_polygon(Vec2 p, const std::vector<Vec2>& poly) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

/// Euclidean distance to a closed polygonal region.
inline double polygon_distance(Vec2 p, const std::vector<Vec2>& poly) {
  if (inside_polygon(p, poly)) return 0.0;
  double d = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) d = std::min(d, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return d;
}

// ---------------------------------------------------------------------------
// Grid complexes
// ---------------------------------------------------------------------------

struct Grid {
  int nv = 0;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<double, 2>> param;  // per-vertex parameters
};

/// Sphere-like grid: two pole vertices plus `rings` rings of `m` vertices.
/// param = (t in (0, 1) from the first pole, azimuth).
inline Grid latlong_grid(int rings, int m) {
  Grid g;
  g.param.push_back({0.0, 0.0});
  for (int i = 1; i <= rings; ++i)
    for (int j = 0; j < m; ++j) g.param.push_back({static_cast<double>(i) / (rings + 1), kTwoPi * j / m});
  g.param.push_back({1.0, 0.0});
  g.nv = static_cast<int>(g.param.size());
  auto id = [&](int i, int j) { return 1 + (i - 1) * m + ((j % m) + m) % m; };
  for (int j = 0; j < m; ++j) g.tris.push_back({0, id(1, j), id(1, j + 1)});
  for (int i = 1; i < rings; ++i)
    for (int j = 0; j < m; ++j) {
      g.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      g.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  for (int j = 0; j < m; ++j) g.tris.push_back({g.nv - 1, id(rings, j + 1), id(rings, j)});
  return g;
}

/// Periodic n x n grid on [0, 1)^2.
inline Grid torus_grid(int n) {
  Grid g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.param.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  g.nv = n * n;
  auto id = [&](int i, int j) { return ((i % n) + n) % n * n + ((j % n) + n) % n; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      g.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return g;
}

/// Planar grid on the disk of radius r (square lattice clipped to the disk).
inline Grid disk_grid(double r, int n) {
  Grid g;
  std::map<std::pair<int, int>, int> id;
  const double step = 2.0 * r / n;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double x = -r + i * step, y = -r + j * step;
      if (x * x + y * y <= r * r) {
        id[{i, j}] = static_cast<int>(g.param.size());
        g.param.push_back({x, y});
      }
    }
  g.nv = static_cast<int>(g.param.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto a = id.find({i, j}), b = id.find({i + 1, j}), c = id.find({i + 1, j + 1}), d = id.find({i, j + 1});
      if (a != id.end() && b != id.end() && c != id.end()) g.tris.push_back({a->second, b->second, c->second});
      if (a != id.end() && c != id.end() && d != id.end()) g.tris.push_back({a->second, c->second, d->second});
    }
  return g;
}

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

inline int masked_components(const Grid& g, const std::vector<char>& mask) {
  UF uf(g.nv);
  for (const auto& t : g.tris)
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (mask[a] && mask[b]) uf.unite(a, b);
    }
  int c = 0;
  for (int i = 0; i < g.nv; ++i) c += mask[i] && uf.find(i) == i;
  return c;
}

/// Components of the union of triangles where f changes sign (vertex adjacency).
inline int sign_change_components(const Grid& g, const std::vector<double>& f) {
  UF uf(g.nv);
  std::vector<char> used(g.nv, 0);
  for (const auto& t : g.tris) {
    bool neg = false, pos = false;
    for (int k = 0; k < 3; ++k) (f[t[k]] < 0.0 ? neg : pos) = true;
    if (!(neg && pos)) continue;
    for (int k = 0; k < 3; ++k) used[t[k]] = 1, uf.unite(t[k], t[(k + 1) % 3]);
  }
  int c = 0;
  for (int i = 0; i < g.nv; ++i) c += used[i] && uf.find(i) == i;
  return c;
}

struct Topology {
  int beta1 = 0;
  int components = 0;  // of X minus E
  int ell_a = 0;
  int ell_b = 0;
  int image_rank = 0;  // rank of H1(X - E) -> H1(X; Z2)
};

/// Components of a masked region together with the Z2 classes of its cycles.
/// `periodic` marks parameters that wrap with period 1.
inline int region_components(const Grid& g, const std::vector<char>& mask, std::array<bool, 2> periodic,
                             std::vector<std::array<int, 2>>& classes) {
  std::vector<std::vector<int>> adj(g.nv);
  for (const auto& t : g.tris)
    for (int k = 0; k < 3; ++k) {
      int a = t[k], b = t[(k + 1) % 3];
      if (mask[a] && mask[b]) adj[a].push_back(b), adj[b].push_back(a);
    }
  std::vector<std::array<int, 2>> lift(g.nv);
  std::vector<char> seen(g.nv, 0);
  int comps = 0;
  for (int s = 0; s < g.nv; ++s) {
    if (!mask[s] || seen[s]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = 1;
    lift[s] = {0, 0};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        std::array<int, 2> l = lift[v];
        for (int c = 0; c < 2; ++c) {
          if (!periodic[c]) continue;
          double d = g.param[w][c] - g.param[v][c];
          if (d > 0.5) l[c] -= 1;
          if (d < -0.5) l[c] += 1;
        }
        if (!seen[w]) {
          seen[w] = 1;
          lift[w] = l;
          stack.push_back(w);
        } else if (l != lift[w]) {
          classes.push_back({((l[0] - lift[w][0]) % 2 + 2) % 2, ((l[1] - lift[w][1]) % 2 + 2) % 2});
        }
      }
    }
  }
  return comps;
}

/// First Betti number of E = {f = 0} on a closed surface with dim H1 = h1x,
/// from the duality sequence: beta1(E) = h1x - rank(H1(X - E) -> H1(X)) + (#(X - E) - 1).
/// Points with |f| <= tau are removed so that regions pinched at a junction
/// count as separate.
inline Topology closed_surface_topology(const Grid& g, const std::vector<double>& f, int h1x, double tau,
                                        std::array<bool, 2> periodic = {false, false}) {
  std::vector<char> neg(g.nv), pos(g.nv);
  for (int i = 0; i < g.nv; ++i) neg[i] = f[i] < -tau, pos[i] = f[i] > tau;
  std::vector<std::array<int, 2>> classes;
  Topology t;
  t.ell_a = region_components(g, neg, periodic, classes);
  t.ell_b = region_components(g, pos, periodic, classes);
  t.components = t.ell_a + t.ell_b;
  bool has10 = false, has01 = false, has11 = false;
  for (const auto& c : classes) {
    has10 |= c[0] == 1 && c[1] == 0;
    has01 |= c[0] == 0 && c[1] == 1;
    has11 |= c[0] == 1 && c[1] == 1;
  }
  t.image_rank = (has10 + has01 + has11 >= 2) ? 2 : (has10 || has01 || has11) ? 1 : 0;
  t.beta1 = h1x - t.image_rank + t.components - 1;
  return t;
}

inline std::vector<double> sample(const Grid& g, const std::function<double(double, double)>& f) {
  std::vector<double> out(g.nv);
  for (int i = 0; i < g.nv; ++i) out[i] = f(g.param[i][0], g.param[i][1]);
  return out;
}

/// Planar grid on [0, w] x [0, h] with n cells along w.
inline Grid rect_grid(double w, double h, int n) {
  Grid g;
  const double step = w / n;
  const int m = static_cast<int>(std::ceil(h / step));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= m; ++j) g.param.push_back({i * step, std::min(h, j * step)});
  g.nv = static_cast<int>(g.param.size());
  auto id = [&](int i, int j) { return i * (m + 1) + j; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      g.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      g.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return g;
}

// ---------------------------------------------------------------------------
// Planar window oracle
// ---------------------------------------------------------------------------

struct PlanarSigns {
  int zero_components = 0;  // sign-change triangles
  int negative = 0;         // components of {f < 0}
  int positive = 0;
  int window_crossings = 0;  // sign changes along the window boundary
  std::vector<Vec2> zeros;   // linear zeros on sign-changing grid edges
};

/// Sign analysis of d(., A) - d(., B) for polygonal A, B in [0, w] x [0, h].
/// A simple arc from window to window shows 1 / 1 / 1 / 2.
inline PlanarSigns planar_signs(const std::vector<Vec2>& a, const std::vector<Vec2>& b, double w, double h, int n) {
  Grid g = rect_grid(w, h, n);
  auto f = sample(g, [&](double x, double y) { return polygon_distance({x, y}, a) - polygon_distance({x, y}, b); });
  PlanarSigns out;
  out.zero_components = sign_change_components(g, f);
  std::vector<char> neg(g.nv), pos(g.nv);
  for (int i = 0; i < g.nv; ++i) neg[i] = f[i] < 0.0, pos[i] = f[i] >= 0.0;
  out.negative = masked_components(g, neg);
  out.positive = masked_components(g, pos);
  std::set<std::pair<int, int>> seen;
  for (const auto& t : g.tris)
    for (int k = 0; k < 3; ++k) {
      int u = std::min(t[k], t[(k + 1) % 3]), v = std::max(t[k], t[(k + 1) % 3]);
      if ((f[u] < 0.0) == (f[v] < 0.0) || !seen.insert({u, v}).second) continue;
      double s = f[u] / (f[u] - f[v]);
      out.zeros.push_back({g.param[u][0] + s * (g.param[v][0] - g.param[u][0]),
                           g.param[u][1] + s * (g.param[v][1] - g.param[u][1])});
    }
  // Walk the window boundary counterclockwise.
  const int m = static_cast<int>(std::ceil(h / (w / n)));
  std::vector<int> ring;
  for (int i = 0; i <= n; ++i) ring.push_back(i * (m + 1));
  for (int j = 1; j <= m; ++j) ring.push_back(n * (m + 1) + j);
  for (int i = n - 1; i >= 0; --i) ring.push_back(i * (m + 1) + m);
  for (int j = m - 1; j >= 1; --j) ring.push_back(j);
  for (std::size_t k = 0; k < ring.size(); ++k)
    out.window_crossings += (f[ring[k]] < 0.0) != (f[ring[(k + 1) % ring.size()]] < 0.0);
  return out;
}

// ---------------------------------------------------------------------------
// Closed scenes: beta1 of E from analytic distances
// ---------------------------------------------------------------------------

inline DiskPoint doubled_disk_param(double t, double az) {
  double r = t < 0.5 ? 2.0 * t : 2.0 * (1.0 - t);
  return {{r * std::cos(az), r * std::sin(az)}, t < 0.5 ? 0 : 1};
}

/// Oracle beta1 for the builtin closed scenes, or -1 for other names.
inline int closed_scene_beta1(const std::string& id) {
  auto sphere_f = [](std::vector<Vec3> a, std::vector<Vec3> b) {
    return [a, b](double t, double az) {
      auto x = sphere_point(t * kPi, az);
      double da = 1e9, db = 1e9;
      for (Vec3 p : a) da = std::min(da, sphere_distance(x, p));
      for (Vec3 p : b) db = std::min(db, sphere_distance(x, p));
      return da - db + 1e-9;
    };
  };
  auto torus_f = [](std::vector<Vec2> a, std::vector<Vec2> b) {
    return [a, b](double u, double v) {
      double da = 1e9, db = 1e9;
      for (Vec2 p : a) da = std::min(da, torus_distance({u, v}, p));
      for (Vec2 p : b) db = std::min(db, torus_distance({u, v}, p));
      return da - db;
    };
  };
  auto disk_f = [](std::vector<DiskPoint> a, std::vector<DiskPoint> b) {
    return [a, b](double t, double az) {
      auto x = doubled_disk_param(t, az);
      double da = 1e9, db = 1e9;
      for (const auto& p : a) da = std::min(da, doubled_disk_distance(x, p));
      for (const auto& p : b) db = std::min(db, doubled_disk_distance(x, p));
      return da - db + 1e-9;
    };
  };
  if (id == "sphere-antipodal") {
    auto g = latlong_grid(120, 240);
    return closed_surface_topology(g, sample(g, sphere_f({sphere_point(0, 0)}, {sphere_point(kPi, 0)})), 0, 0.02).beta1;
  }
  if (id == "sphere-one-vs-two") {
    auto g = latlong_grid(120, 240);
    auto f = sphere_f({sphere_point(0, 0)}, {sphere_point(2.0, 0.3), sphere_point(2.4, 3.5)});
    return closed_surface_topology(g, sample(g, f), 0, 0.02).beta1;
  }
  if (id == "torus-diagonal") {
    auto g = torus_grid(201);
    return closed_surface_topology(g, sample(g, torus_f({{0, 0}}, {{0.5, 0.5}})), 2, 0.01, {true, true}).beta1;
  }
  if (id == "torus-two-vs-one") {
    auto g = torus_grid(201);
    auto f = torus_f({{0, 0}, {0.5, 0}}, {{0.25, 0.5}});
    return closed_surface_topology(g, sample(g, f), 2, 0.01, {true, true}).beta1;
  }
  if (id == "doubled-disk-centers") {
    auto g = latlong_grid(200, 360);
    return closed_surface_topology(g, sample(g, disk_f({{{0, 0}, 0}}, {{{0, 0}, 1}})), 0, 0.01).beta1;
  }
  if (id == "doubled-disk-one-vs-two") {
    auto g = latlong_grid(200, 360);
    auto f = disk_f({{{0, 0}, 0}}, {{{0.5, 0}, 1}, {{-0.5, 0}, 1}});
    return closed_surface_topology(g, sample(g, f), 0, 0.01).beta1;
  }
  return -1;
}

}  // namespace oracle
