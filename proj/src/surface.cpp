#include "mediatrix/surface.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

namespace mediatrix::surface {

namespace {

std::pair<int, int> key(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

std::array<Vec2, 3> layout_face(double l01, double l12, double l20) {
  std::array<Vec2, 3> p;
  p[0] = {0.0, 0.0};
  p[1] = {l01, 0.0};
  double x = (l01 * l01 + l20 * l20 - l12 * l12) / (2.0 * l01);
  double y2 = l20 * l20 - x * x;
  p[2] = {x, std::sqrt(std::max(y2, 0.0))};
  return p;
}

}  // namespace

// ----------------------------------------------------------------------------
// Construction
// ----------------------------------------------------------------------------

TriSurface TriSurface::build(MeshInput input) {
  TriSurface s;
  s.name_ = input.name;
  s.num_vertices_ = input.num_vertices;
  s.chart_ = input.chart;
  s.period_ = input.period;
  s.target_h_ = input.target_h;
  const int nv = input.num_vertices;
  const int nf = static_cast<int>(input.triangles.size());
  if (nv <= 0 || nf == 0) throw GeometryError("empty mesh");
  if (!input.positions.empty() && static_cast<int>(input.positions.size()) != nv)
    throw GeometryError("position count does not match vertex count");

  std::vector<std::array<int, 3>> tris = input.triangles;
  for (const auto& t : tris) {
    for (int v : t)
      if (v < 0 || v >= nv) throw GeometryError("vertex index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw GeometryError("degenerate face: repeated vertex");
  }

  // Undirected edge incidence.
  std::map<std::pair<int, int>, std::vector<int>> incidence;
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 3; ++i) incidence[key(tris[f][i], tris[f][(i + 1) % 3])].push_back(f);
  for (const auto& [k, fs] : incidence)
    if (fs.size() > 2)
      throw GeometryError("non-manifold edge (" + std::to_string(k.first) + "," +
                          std::to_string(k.second) + ")");

  auto has_directed = [&](const std::array<int, 3>& t, int u, int v) {
    for (int i = 0; i < 3; ++i)
      if (t[i] == u && t[(i + 1) % 3] == v) return true;
    return false;
  };

  // Consistent orientation by BFS; also establishes connectivity.
  std::vector<int> flip(nf, -1);
  flip[0] = 0;
  std::queue<int> queue;
  queue.push(0);
  int visited = 1;
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop();
    auto tf = tris[f];
    if (flip[f]) std::swap(tf[1], tf[2]);
    for (int i = 0; i < 3; ++i) {
      int u = tf[i], v = tf[(i + 1) % 3];
      for (int g : incidence[key(u, v)]) {
        if (g == f) continue;
        // g must traverse the edge as v -> u.
        bool natural = has_directed(tris[g], v, u);
        int want = natural ? 0 : 1;
        if (flip[g] < 0) {
          flip[g] = want;
          queue.push(g);
          ++visited;
        } else if (flip[g] != want) {
          throw GeometryError("surface is not orientable");
        }
      }
    }
  }
  if (visited != nf) throw GeometryError("face adjacency graph is not connected");
  for (int f = 0; f < nf; ++f)
    if (flip[f]) std::swap(tris[f][1], tris[f][2]);
  s.faces_ = tris;

  // Edges.
  s.face_edges_.assign(nf, {-1, -1, -1});
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < 3; ++i) {
      auto k = key(tris[f][i], tris[f][(i + 1) % 3]);
      auto it = s.edge_index_.find(k);
      int e;
      if (it == s.edge_index_.end()) {
        e = static_cast<int>(s.edges_.size());
        Edge ed;
        ed.v0 = k.first;
        ed.v1 = k.second;
        ed.f0 = f;
        s.edges_.push_back(ed);
        s.edge_index_.emplace(k, e);
      } else {
        e = it->second;
        s.edges_[e].f1 = f;
      }
      s.face_edges_[f][i] = e;
    }
  }

  // Lengths: explicit table first, then embedding.
  for (auto& ed : s.edges_) {
    auto it = input.edge_lengths.find({ed.v0, ed.v1});
    if (it != input.edge_lengths.end()) {
      ed.length = it->second;
    } else if (!input.positions.empty()) {
      ed.length = distance(input.positions[ed.v0], input.positions[ed.v1]);
    } else {
      throw GeometryError("no length for edge (" + std::to_string(ed.v0) + "," +
                          std::to_string(ed.v1) + ")");
    }
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw GeometryError("non-positive edge length");
  }

  // Strict triangle inequality and layouts.
  s.layouts_.resize(nf);
  for (int f = 0; f < nf; ++f) {
    double a = s.edges_[s.face_edges_[f][0]].length;
    double b = s.edges_[s.face_edges_[f][1]].length;
    double c = s.edges_[s.face_edges_[f][2]].length;
    if (!(a < b + c && b < a + c && c < a + b))
      throw GeometryError("degenerate face " + std::to_string(f) + ": triangle inequality fails");
    s.layouts_[f] = layout_face(a, b, c);
  }

  // Vertex stars.
  std::vector<std::vector<std::pair<int, int>>> corners_at(nv);
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 3; ++i) corners_at[tris[f][i]].emplace_back(f, i);
  s.stars_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    const auto& cs = corners_at[v];
    if (cs.empty()) throw GeometryError("isolated vertex " + std::to_string(v));
    // Start at a corner whose CW neighbour is missing (boundary), else the first.
    std::pair<int, int> start = cs.front();
    bool boundary = false;
    for (auto [f, i] : cs) {
      int n = tris[f][(i + 1) % 3];
      if (s.edges_[s.edge_index_.at(key(v, n))].is_boundary()) {
        start = {f, i};
        boundary = true;
        break;
      }
    }
    VertexStar star;
    star.boundary = boundary;
    auto [f, i] = start;
    double acc = 0.0;
    for (std::size_t step = 0; step <= cs.size(); ++step) {
      int n = tris[f][(i + 1) % 3];
      int p = tris[f][(i + 2) % 3];
      double lvn = s.edges_[s.edge_index_.at(key(v, n))].length;
      double lvp = s.edges_[s.edge_index_.at(key(v, p))].length;
      double lnp = s.edges_[s.edge_index_.at(key(n, p))].length;
      StarCorner corner{f, i, corner_angle(lvn, lvp, lnp), acc};
      acc += corner.angle;
      star.corners.push_back(corner);
      const Edge& next_edge = s.edges_[s.edge_index_.at(key(v, p))];
      if (next_edge.is_boundary()) break;
      int g = next_edge.f0 == f ? next_edge.f1 : next_edge.f0;
      if (g == start.first) break;
      f = g;
      i = s.local_index(g, v);
    }
    if (star.corners.size() != cs.size())
      throw GeometryError("non-manifold vertex " + std::to_string(v));
    star.total_angle = acc;
    s.stars_[v] = std::move(star);
  }

  // Boundary loops following face orientation.
  std::map<int, int> next_on_boundary;
  for (const auto& ed : s.edges_) {
    if (!ed.is_boundary()) continue;
    const auto& t = tris[ed.f0];
    int u = ed.v0, w = ed.v1;
    if (!has_directed(t, u, w)) std::swap(u, w);
    if (next_on_boundary.count(u)) throw GeometryError("boundary loop is not simple");
    next_on_boundary[u] = w;
  }
  std::vector<bool> used(nv, false);
  for (const auto& [u0, w0] : next_on_boundary) {
    if (used[u0]) continue;
    std::vector<int> loop;
    int u = u0;
    while (!used[u]) {
      used[u] = true;
      loop.push_back(u);
      auto it = next_on_boundary.find(u);
      if (it == next_on_boundary.end()) throw GeometryError("open boundary chain");
      u = it->second;
    }
    if (u != u0) throw GeometryError("boundary loop is not simple");
    s.boundary_loops_.push_back(std::move(loop));
  }

  s.positions_ = input.positions;
  s.uv_ = input.uv;
  s.sheet_ = input.sheet;
  s.input_ = std::move(input);
  s.input_.triangles = s.faces_;
  return s;
}

int TriSurface::find_edge(int u, int v) const {
  auto it = edge_index_.find(key(u, v));
  return it == edge_index_.end() ? -1 : it->second;
}

int TriSurface::local_index(int f, int v) const {
  for (int i = 0; i < 3; ++i)
    if (faces_[f][i] == v) return i;
  return -1;
}

Transform2 TriSurface::unfold(int from, int to) const {
  if (from == to) return {};
  int e = -1;
  for (int i = 0; i < 3; ++i) {
    int cand = face_edges_[from][i];
    if (other_face(cand, from) == to) {
      e = cand;
      break;
    }
  }
  if (e < 0) throw GeometryError("unfold: faces are not adjacent");
  int u = edges_[e].v0, v = edges_[e].v1;
  Vec2 pu = layouts_[from][local_index(from, u)];
  Vec2 pv = layouts_[from][local_index(from, v)];
  Vec2 qu = layouts_[to][local_index(to, u)];
  Vec2 qv = layouts_[to][local_index(to, v)];
  Vec2 a = (pv - pu) * (1.0 / norm(pv - pu));
  Vec2 b = (qv - qu) * (1.0 / norm(qv - qu));
  Transform2 t;
  t.c = dot(a, b);
  t.s = cross(a, b);
  t.t = qu - t.rotate(pu);
  return t;
}

ConeProfile TriSurface::cone_profile() const {
  ConeProfile p;
  p.total_angle.resize(num_vertices_);
  p.is_boundary.resize(num_vertices_);
  for (int v = 0; v < num_vertices_; ++v) {
    p.total_angle[v] = stars_[v].total_angle;
    p.is_boundary[v] = stars_[v].boundary;
  }
  return p;
}

double TriSurface::min_edge_length() const {
  double m = edges_.front().length;
  for (const auto& e : edges_) m = std::min(m, e.length);
  return m;
}

double TriSurface::max_edge_length() const {
  double m = 0.0;
  for (const auto& e : edges_) m = std::max(m, e.length);
  return m;
}

double TriSurface::mean_edge_length() const {
  double acc = 0.0;
  for (const auto& e : edges_) acc += e.length;
  return acc / static_cast<double>(edges_.size());
}

double TriSurface::total_area() const {
  double a = 0.0;
  for (const auto& l : layouts_) a += 0.5 * cross(l[1] - l[0], l[2] - l[0]);
  return a;
}

Vec3 TriSurface::embed(int f, const std::array<double, 3>& bary) const {
  if (positions_.empty()) throw InputError("surface has no embedding");
  const auto& t = faces_[f];
  return positions_[t[0]] * bary[0] + positions_[t[1]] * bary[1] + positions_[t[2]] * bary[2];
}

// ----------------------------------------------------------------------------
// Generators
// ----------------------------------------------------------------------------

namespace {

// Triangulates the band between two periodic rings of vertex ids whose angular
// positions (in [0, period)) are given; both rings start at angle 0.
void stitch_rings(const std::vector<int>& inner, const std::vector<double>& inner_angle,
                  const std::vector<int>& outer, const std::vector<double>& outer_angle,
                  double period, std::vector<std::array<int, 3>>& tris) {
  const std::size_t ni = inner.size(), no = outer.size();
  if (ni == 1) {
    for (std::size_t j = 0; j < no; ++j) tris.push_back({inner[0], outer[j], outer[(j + 1) % no]});
    return;
  }
  std::size_t i = 0, j = 0;
  while (i < ni || j < no) {
    double ai = i + 1 < ni ? inner_angle[i + 1] : period;
    double bj = j + 1 < no ? outer_angle[j + 1] : period;
    if (j < no && (i == ni || bj <= ai)) {
      tris.push_back({inner[i % ni], outer[j], outer[(j + 1) % no]});
      ++j;
    } else {
      tris.push_back({inner[i], outer[j % no], inner[(i + 1) % ni]});
      ++i;
    }
  }
}

}  // namespace

TriSurface flat_disk(double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0)) throw InputError("flat_disk: radius and h must be positive");
  const int rings = std::max(1, static_cast<int>(std::ceil(radius / h - 1e-9)));
  MeshInput in;
  in.name = "flat_disk";
  in.chart = Chart::kPlanar;
  in.target_h = h;
  in.positions.push_back({0.0, 0.0, 0.0});
  std::vector<int> prev{0};
  std::vector<double> prev_angle{0.0};
  for (int k = 1; k <= rings; ++k) {
    double r = radius * k / rings;
    int n = 6 * k;
    std::vector<int> ring;
    std::vector<double> ang;
    for (int j = 0; j < n; ++j) {
      double a = kTwoPi * j / n;
      // Exact values on the axes keep symmetric scenes symmetric.
      double c = std::cos(a), sn = std::sin(a);
      if (4 * j == n) c = 0.0, sn = 1.0;
      if (2 * j == n) c = -1.0, sn = 0.0;
      if (4 * j == 3 * n) c = 0.0, sn = -1.0;
      ring.push_back(static_cast<int>(in.positions.size()));
      ang.push_back(a);
      in.positions.push_back({r * c, r * sn, 0.0});
    }
    stitch_rings(prev, prev_angle, ring, ang, kTwoPi, in.triangles);
    prev = std::move(ring);
    prev_angle = std::move(ang);
  }
  in.num_vertices = static_cast<int>(in.positions.size());
  return TriSurface::build(std::move(in));
}

TriSurface flat_rectangle(double width, double height, double h) {
  if (!(width > 0.0) || !(height > 0.0) || !(h > 0.0))
    throw InputError("flat_rectangle: sides and h must be positive");
  const int nx = std::max(2, static_cast<int>(std::ceil(width / h - 1e-9)));
  const int ny = std::max(2, static_cast<int>(std::ceil(height / h - 1e-9)));
  MeshInput in;
  in.name = "flat_rectangle";
  in.chart = Chart::kPlanar;
  in.target_h = h;
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) in.positions.push_back({width * i / nx, height * j / ny, 0.0});
  // Diagonals point away from the centre so no interior edge joins two
  // boundary vertices (the rectangle can then be doubled).
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if ((2 * i < nx) == (2 * j < ny)) {
        in.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        in.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      } else {
        in.triangles.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        in.triangles.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  in.num_vertices = static_cast<int>(in.positions.size());
  return TriSurface::build(std::move(in));
}

TriSurface flat_square(double side, double h) {
  if (!(side > 0.0) || !(h > 0.0)) throw InputError("flat_square: side and h must be positive");
  return flat_rectangle(side, side, h);
}

TriSurface sphere(double radius, double h) {
  if (!(radius > 0.0) || !(h > 0.0)) throw InputError("sphere: radius and h must be positive");
  const int n = std::max(1, static_cast<int>(std::ceil(1.1 * radius / h)));
  std::vector<Vec3> ico;
  ico.push_back({0, 0, 1});
  const double zr = 1.0 / std::sqrt(5.0), rr = 2.0 / std::sqrt(5.0);
  for (int k = 0; k < 5; ++k)
    ico.push_back({rr * std::cos(kTwoPi * k / 5), rr * std::sin(kTwoPi * k / 5), zr});
  for (int k = 0; k < 5; ++k)
    ico.push_back({rr * std::cos(kTwoPi * k / 5 + kPi / 5), rr * std::sin(kTwoPi * k / 5 + kPi / 5), -zr});
  ico.push_back({0, 0, -1});
  std::vector<std::array<int, 3>> faces;
  for (int k = 0; k < 5; ++k) {
    int u0 = 1 + k, u1 = 1 + (k + 1) % 5, l0 = 6 + k, l1 = 6 + (k + 1) % 5;
    faces.push_back({0, u0, u1});
    faces.push_back({u0, l0, u1});
    faces.push_back({u1, l0, l1});
    faces.push_back({11, l1, l0});
  }

  MeshInput in;
  in.name = "sphere";
  in.chart = Chart::kSphere;
  in.target_h = h;
  std::map<std::array<long long, 3>, int> dedupe;
  auto vertex_id = [&](Vec3 p) {
    p = p * (1.0 / norm(p));
    std::array<long long, 3> q{std::llround(p.x * 1e9), std::llround(p.y * 1e9), std::llround(p.z * 1e9)};
    auto it = dedupe.find(q);
    if (it != dedupe.end()) return it->second;
    int id = static_cast<int>(in.positions.size());
    in.positions.push_back(p * radius);
    dedupe.emplace(q, id);
    return id;
  };
  for (const auto& f : faces) {
    Vec3 a = ico[f[0]], b = ico[f[1]], c = ico[f[2]];
    std::vector<std::vector<int>> grid(n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) {
        Vec3 p = a + (b - a) * (static_cast<double>(i) / n) + (c - a) * (static_cast<double>(j) / n);
        if (i + j == 0) p = a;
        if (i == n) p = b;
        if (j == n) p = c;
        grid[i].push_back(vertex_id(p));
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; i + j < n; ++j) {
        in.triangles.push_back({grid[i][j], grid[i + 1][j], grid[i][j + 1]});
        if (i + j + 1 < n) in.triangles.push_back({grid[i + 1][j], grid[i + 1][j + 1], grid[i][j + 1]});
      }
  }
  in.num_vertices = static_cast<int>(in.positions.size());
  return TriSurface::build(std::move(in));
}

TriSurface flat_torus(double side, double h) {
  if (!(side > 0.0) || !(h > 0.0)) throw InputError("flat_torus: side and h must be positive");
  const int n = std::max(3, static_cast<int>(std::ceil(side / h - 1e-9)));
  MeshInput in;
  in.name = "flat_torus";
  in.chart = Chart::kTorus;
  in.period = side;
  in.target_h = h;
  auto id = [n](int i, int j) { return ((j % n + n) % n) * n + ((i % n + n) % n); };
  const double big = 0.35 * side, small = 0.15 * side;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double u = side * i / n, v = side * j / n;
      in.uv.push_back({u, v});
      double a = kTwoPi * i / n, b = kTwoPi * j / n;
      in.positions.push_back({(big + small * std::cos(b)) * std::cos(a),
                              (big + small * std::cos(b)) * std::sin(a), small * std::sin(b)});
    }
  const double step = side / n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      in.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      in.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      in.edge_lengths[key(id(i, j), id(i + 1, j))] = step;
      in.edge_lengths[key(id(i, j), id(i, j + 1))] = step;
      in.edge_lengths[key(id(i, j), id(i + 1, j + 1))] = step * std::sqrt(2.0);
    }
  in.num_vertices = n * n;
  return TriSurface::build(std::move(in));
}

TriSurface cone(double total_angle, double radius, double h) {
  if (!(total_angle > 0.0) || !(radius > 0.0) || !(h > 0.0))
    throw InputError("cone: angle, radius and h must be positive");
  const int rings = std::max(1, static_cast<int>(std::ceil(radius / h - 1e-9)));
  MeshInput in;
  in.name = "cone";
  in.chart = Chart::kCone;
  in.period = total_angle;
  in.target_h = h;
  const bool embeddable = total_angle <= kTwoPi + 1e-12;
  const double sin_a = total_angle / kTwoPi, cos_a = std::sqrt(std::max(0.0, 1.0 - sin_a * sin_a));
  auto add = [&](double r, double phi) {
    in.uv.push_back({r, phi});
    if (embeddable) {
      double psi = phi * kTwoPi / total_angle;
      in.positions.push_back({r * sin_a * std::cos(psi), r * sin_a * std::sin(psi), -r * cos_a});
    }
  };
  add(0.0, 0.0);
  std::vector<int> prev{0};
  std::vector<double> prev_angle{0.0};
  for (int k = 1; k <= rings; ++k) {
    double r = radius * k / rings;
    int n = std::max(3, static_cast<int>(std::lround(6.0 * k * total_angle / kTwoPi)));
    std::vector<int> ring;
    std::vector<double> ang;
    for (int j = 0; j < n; ++j) {
      ring.push_back(static_cast<int>(in.uv.size()));
      ang.push_back(total_angle * j / n);
      add(r, total_angle * j / n);
    }
    stitch_rings(prev, prev_angle, ring, ang, total_angle, in.triangles);
    prev = std::move(ring);
    prev_angle = std::move(ang);
  }
  in.num_vertices = static_cast<int>(in.uv.size());
  if (!embeddable) in.positions.clear();
  for (const auto& t : in.triangles)
    for (int i = 0; i < 3; ++i) {
      Vec2 p = in.uv[t[i]], q = in.uv[t[(i + 1) % 3]];
      double d = std::fabs(p.y - q.y);
      d = std::min(d, total_angle - d);
      double len2 = p.x * p.x + q.x * q.x - 2.0 * p.x * q.x * std::cos(d);
      in.edge_lengths[key(t[i], t[(i + 1) % 3])] = std::sqrt(std::max(len2, 0.0));
    }
  return TriSurface::build(std::move(in));
}

TriSurface doubled_disk(double radius, double h) {
  auto s = double_surface(flat_disk(radius, h));
  return s;
}

TriSurface sqrt_horn(double h) {
  if (!(h > 0.0)) throw InputError("sqrt_horn: h must be positive");
  const double r0 = h / 10.0;
  // Meridian arc length of z = sqrt(r): with r = u^2, ds = sqrt(4u^2 + 1) du.
  auto arc_exact = [](double a, double b) {
    auto prim = [](double u) {
      return 0.5 * u * std::sqrt(4.0 * u * u + 1.0) + 0.25 * std::asinh(2.0 * u);
    };
    return prim(std::sqrt(b)) - prim(std::sqrt(a));
  };
  const double total = arc_exact(r0, 1.0);
  const int rings = std::max(2, static_cast<int>(std::ceil(total / h)));
  std::vector<double> radii;
  for (int k = 0; k <= rings; ++k) {
    double target = total * k / rings;
    double lo = r0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (arc_exact(r0, mid) < target ? lo : hi) = mid;
    }
    radii.push_back(k == 0 ? r0 : (k == rings ? 1.0 : 0.5 * (lo + hi)));
  }
  MeshInput in;
  in.name = "sqrt_horn";
  in.chart = Chart::kEmbedded;
  in.target_h = h;
  in.positions.push_back({0.0, 0.0, 0.0});
  std::vector<int> prev{0};
  std::vector<double> prev_angle{0.0};
  for (double r : radii) {
    int n = std::max(6, static_cast<int>(std::lround(kTwoPi * r / h)));
    std::vector<int> ring;
    std::vector<double> ang;
    for (int j = 0; j < n; ++j) {
      double a = kTwoPi * j / n;
      ring.push_back(static_cast<int>(in.positions.size()));
      ang.push_back(a);
      in.positions.push_back({r * std::cos(a), r * std::sin(a), std::sqrt(r)});
    }
    stitch_rings(prev, prev_angle, ring, ang, kTwoPi, in.triangles);
    prev = std::move(ring);
    prev_angle = std::move(ang);
  }
  in.num_vertices = static_cast<int>(in.positions.size());
  return TriSurface::build(std::move(in));
}

const std::vector<std::string>& builtin_generators() {
  static const std::vector<std::string> names{"flat_disk", "flat_square", "flat_rectangle", "sphere",   "flat_torus",
                                              "cone",      "doubled_disk", "pillowcase", "sqrt_horn"};
  return names;
}

TriSurface make_builtin(const std::string& generator, const std::map<std::string, double>& params,
                        double h) {
  auto get = [&](const char* k, double def) {
    auto it = params.find(k);
    return it == params.end() ? def : it->second;
  };
  if (generator == "flat_disk") return flat_disk(get("radius", 1.0), h);
  if (generator == "flat_square") return flat_square(get("side", 1.0), h);
  if (generator == "flat_rectangle") return flat_rectangle(get("width", 2.0), get("height", 1.0), h);
  if (generator == "sphere") return sphere(get("radius", 1.0), h);
  if (generator == "flat_torus") return flat_torus(get("side", 1.0), h);
  if (generator == "cone") return cone(get("angle", 1.5 * kPi), get("radius", 1.0), h);
  if (generator == "doubled_disk") return doubled_disk(get("radius", 1.0), h);
  if (generator == "pillowcase") return double_surface(flat_square(get("side", 1.0), h));
  if (generator == "sqrt_horn") return sqrt_horn(h);
  throw InputError("unknown generator '" + generator + "'");
}

// ----------------------------------------------------------------------------
// Validation and doubling
// ----------------------------------------------------------------------------

ValidationReport validate_alexandrov(const TriSurface& s, double tol_angle) {
  ValidationReport r;
  double defect = 0.0;
  for (int v = 0; v < s.num_vertices(); ++v) {
    double theta = s.cone_angle(v);
    if (s.is_boundary_vertex(v)) {
      defect += kPi - theta;
      if (theta > kPi + tol_angle) r.warnings.push_back({v, theta});
    } else {
      defect += kTwoPi - theta;
      r.max_interior_angle = std::max(r.max_interior_angle, theta);
      if (theta > kTwoPi + tol_angle) r.failures.push_back({v, theta});
    }
  }
  r.pass = r.failures.empty();
  r.gauss_bonnet_residual = defect - kTwoPi * s.euler_characteristic();
  return r;
}

TriSurface double_surface(const TriSurface& s) {
  if (s.closed()) throw GeometryError("double: surface has empty boundary");
  const int nv = s.num_vertices();
  std::vector<int> seen(nv, 0);
  for (const auto& loop : s.boundary_loops())
    for (int v : loop)
      if (seen[v]++) throw GeometryError("double: boundary loop is not simple");
  for (int e = 0; e < s.num_edges(); ++e) {
    const Edge& ed = s.edge(e);
    if (!ed.is_boundary() && s.is_boundary_vertex(ed.v0) && s.is_boundary_vertex(ed.v1))
      throw GeometryError("double: interior edge joins two boundary vertices");
  }

  std::vector<int> mirror(nv, -1);
  int next = nv;
  for (int v = 0; v < nv; ++v) mirror[v] = s.is_boundary_vertex(v) ? v : next++;

  MeshInput in;
  in.name = "double(" + s.name() + ")";
  in.num_vertices = next;
  in.chart = Chart::kDoubled;
  in.target_h = s.target_h();
  in.period = s.period();
  for (int f = 0; f < s.num_faces(); ++f) in.triangles.push_back(s.face(f));
  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& t = s.face(f);
    in.triangles.push_back({mirror[t[0]], mirror[t[2]], mirror[t[1]]});
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    const Edge& ed = s.edge(e);
    in.edge_lengths[key(ed.v0, ed.v1)] = ed.length;
    in.edge_lengths[key(mirror[ed.v0], mirror[ed.v1])] = ed.length;
  }
  in.sheet.assign(next, 0);
  if (s.has_positions()) in.positions.resize(next);
  if (!s.uv().empty()) in.uv.resize(next);
  for (int v = 0; v < nv; ++v) {
    if (s.is_boundary_vertex(v)) in.sheet[v] = 2;
    else in.sheet[mirror[v]] = 1;
    if (s.has_positions()) {
      Vec3 p = s.positions()[v];
      in.positions[v] = p;
      in.positions[mirror[v]] = {p.x, p.y, -p.z};
    }
    if (!s.uv().empty()) {
      in.uv[v] = s.uv()[v];
      in.uv[mirror[v]] = s.uv()[v];
    }
  }
  return TriSurface::build(std::move(in));
}

// ----------------------------------------------------------------------------
// Mesh files
// ----------------------------------------------------------------------------

TriSurface parse_mesh(const std::string& text, const std::string& name) {
  MeshInput in;
  in.name = name;
  std::istringstream stream(text);
  std::string line;
  std::vector<std::tuple<int, int, double>> lengths;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw InputError(name + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(stream, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z)) fail("bad vertex");
      in.positions.push_back(p);
    } else if (tag == "f") {
      std::vector<int> ids;
      std::string tok;
      while (ls >> tok) {
        auto slash = tok.find('/');
        try {
          ids.push_back(std::stoi(tok.substr(0, slash)) - 1);
        } catch (const std::exception&) {
          fail("bad face index '" + tok + "'");
        }
      }
      if (ids.size() != 3) fail("only triangular faces are supported");
      in.triangles.push_back({ids[0], ids[1], ids[2]});
    } else if (tag == "#@len") {
      int i, j;
      double l;
      if (!(ls >> i >> j >> l)) fail("bad #@len line");
      lengths.emplace_back(i - 1, j - 1, l);
    }
  }
  in.num_vertices = static_cast<int>(in.positions.size());
  for (auto [i, j, l] : lengths) {
    if (i < 0 || j < 0 || i >= in.num_vertices || j >= in.num_vertices) fail("#@len index out of range");
    in.edge_lengths[key(i, j)] = l;
  }
  in.chart = Chart::kEmbedded;
  if (in.num_vertices > 0 && in.edge_lengths.empty()) {
    double mean = 0.0;
    int count = 0;
    for (const auto& t : in.triangles)
      for (int k = 0; k < 3; ++k)
        if (t[k] >= 0 && t[k] < in.num_vertices && t[(k + 1) % 3] >= 0 && t[(k + 1) % 3] < in.num_vertices) {
          mean += distance(in.positions[t[k]], in.positions[t[(k + 1) % 3]]);
          ++count;
        }
    in.target_h = count ? mean / count : 0.0;
  }
  return TriSurface::build(std::move(in));
}

TriSurface read_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read mesh file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_mesh(ss.str(), path);
}

std::string write_mesh(const TriSurface& s) {
  std::ostringstream out;
  out.precision(17);
  out << "# " << s.name() << "\n";
  for (int v = 0; v < s.num_vertices(); ++v) {
    Vec3 p = s.has_positions() ? s.positions()[v] : Vec3{};
    out << "v " << p.x << ' ' << p.y << ' ' << p.z << '\n';
  }
  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& t = s.face(f);
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    const Edge& ed = s.edge(e);
    out << "#@len " << ed.v0 + 1 << ' ' << ed.v1 + 1 << ' ' << ed.length << '\n';
  }
  return out.str();
}

}  // namespace mediatrix::surface
