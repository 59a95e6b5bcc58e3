#pragma once

// Triangulated polyhedral surfaces with intrinsic edge lengths. These are the
// discrete carriers for compact Alexandrov surfaces: the metric lives entirely
// in the edge lengths, embedding coordinates are kept for snapping and export.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mediatrix/common.hpp"

namespace mediatrix::surface {

/// How user coordinates map onto the mesh (used for snapping and export).
enum class Chart {
  kNone,     // no coordinates, vertex ids only
  kPlanar,   // positions are (x, y, 0) of a flat domain
  kSphere,   // positions on a round sphere
  kTorus,    // uv holds periodic parameters in [0, period)^2
  kCone,     // uv holds the development (r, phi)
  kDoubled,  // positions of the original surface, sheet tells the copy
  kEmbedded  // generic embedded surface
};

/// Rigid motion of the plane, p -> R p + t.
struct Transform2 {
  double c = 1.0;
  double s = 0.0;
  Vec2 t{};

  Vec2 apply(Vec2 p) const { return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y}; }
  Vec2 rotate(Vec2 p) const { return {c * p.x - s * p.y, s * p.x + c * p.y}; }
  /// (this ∘ o)(p) = this(o(p))
  Transform2 compose(const Transform2& o) const {
    Transform2 r;
    r.c = c * o.c - s * o.s;
    r.s = s * o.c + c * o.s;
    r.t = apply(o.t);
    return r;
  }
  Transform2 inverse() const {
    Transform2 r;
    r.c = c;
    r.s = -s;
    r.t = -r.rotate(t);
    return r;
  }
};

struct Edge {
  int v0 = -1;  // v0 < v1
  int v1 = -1;
  int f0 = -1;
  int f1 = -1;  // -1 on the boundary
  double length = 0.0;
  bool is_boundary() const { return f1 < 0; }
};

/// One corner in the ordered star of a vertex.
struct StarCorner {
  int face = -1;
  int corner = -1;        // local index of the vertex in `face`
  double angle = 0.0;     // corner angle
  double start = 0.0;     // cumulative angle before this corner (CCW)
};

struct VertexStar {
  std::vector<StarCorner> corners;  // CCW order; for boundary vertices the
                                    // first corner starts at a boundary edge
  bool boundary = false;
  double total_angle = 0.0;
};

/// Raw input for TriSurface::build.
struct MeshInput {
  std::string name;
  int num_vertices = 0;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> positions;                       // optional
  std::vector<Vec2> uv;                              // optional
  std::vector<int> sheet;                            // optional, doubled meshes
  std::map<std::pair<int, int>, double> edge_lengths;  // optional, keys (min,max)
  Chart chart = Chart::kNone;
  double period = 0.0;  // torus side / cone total angle
  double target_h = 0.0;
};

/// Per-vertex cone angle data.
struct ConeProfile {
  std::vector<double> total_angle;
  std::vector<bool> is_boundary;
};

class TriSurface {
 public:
  /// Validates and assembles a surface. Throws GeometryError on non-manifold,
  /// non-orientable, disconnected or degenerate input.
  static TriSurface build(MeshInput input);

  const std::string& name() const { return name_; }
  int num_vertices() const { return num_vertices_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::array<int, 3>& face(int f) const { return faces_[f]; }
  const Edge& edge(int e) const { return edges_[e]; }
  /// Edge between corner i and corner (i+1)%3 of face f.
  int face_edge(int f, int i) const { return face_edges_[f][i]; }
  /// Edge id for the vertex pair, or -1.
  int find_edge(int u, int v) const;
  int local_index(int f, int v) const;
  int other_face(int e, int f) const {
    return edges_[e].f0 == f ? edges_[e].f1 : edges_[e].f0;
  }

  /// Planar layout of face f: corner 0 at the origin, corner 1 on +x, CCW.
  const std::array<Vec2, 3>& layout(int f) const { return layouts_[f]; }
  /// Rigid motion taking coordinates of face `from` into the frame of the
  /// adjacent face `to` (unfolding across their common edge).
  Transform2 unfold(int from, int to) const;

  const VertexStar& star(int v) const { return stars_[v]; }
  double cone_angle(int v) const { return stars_[v].total_angle; }
  bool is_boundary_vertex(int v) const { return stars_[v].boundary; }
  ConeProfile cone_profile() const;

  const std::vector<std::vector<int>>& boundary_loops() const { return boundary_loops_; }
  bool closed() const { return boundary_loops_.empty(); }
  int euler_characteristic() const { return num_vertices_ - num_edges() + num_faces(); }

  double min_edge_length() const;
  double max_edge_length() const;
  double mean_edge_length() const;
  double total_area() const;
  double target_h() const { return target_h_; }

  Chart chart() const { return chart_; }
  double period() const { return period_; }
  bool has_positions() const { return !positions_.empty(); }
  const std::vector<Vec3>& positions() const { return positions_; }
  const std::vector<Vec2>& uv() const { return uv_; }
  const std::vector<int>& sheet() const { return sheet_; }

  /// Embedding of a barycentric point (requires positions).
  Vec3 embed(int f, const std::array<double, 3>& bary) const;

  /// Raw input, kept so the surface can be re-serialized or doubled.
  const MeshInput& input() const { return input_; }

 private:
  std::string name_;
  int num_vertices_ = 0;
  std::vector<std::array<int, 3>> faces_;
  std::vector<std::array<int, 3>> face_edges_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, int> edge_index_;
  std::vector<std::array<Vec2, 3>> layouts_;
  std::vector<VertexStar> stars_;
  std::vector<std::vector<int>> boundary_loops_;
  std::vector<Vec3> positions_;
  std::vector<Vec2> uv_;
  std::vector<int> sheet_;
  Chart chart_ = Chart::kNone;
  double period_ = 0.0;
  double target_h_ = 0.0;
  MeshInput input_;
};

// ----------------------------------------------------------------------------
// Generators
// ----------------------------------------------------------------------------

/// Disk of the given radius, concentric rings with 6k vertices on ring k.
TriSurface flat_disk(double radius, double h);
/// Rectangle [0, width] x [0, height] with boundary.
TriSurface flat_rectangle(double width, double height, double h);
/// Square [0, side]^2 with boundary.
TriSurface flat_square(double side, double h);
/// Geodesic icosphere with vertices at both poles.
TriSurface sphere(double radius, double h);
/// Flat square torus of the given side.
TriSurface flat_torus(double side, double h);
/// Cone with apex total angle `total_angle`, truncated at `radius`.
TriSurface cone(double total_angle, double radius, double h);
/// Double of the unit-radius disk.
TriSurface doubled_disk(double radius, double h);
/// Surface of revolution z = (x^2 + y^2)^(1/4), apex truncated at h/10 and
/// capped with a fan to the singular point.
TriSurface sqrt_horn(double h);

/// Names accepted by make_builtin.
const std::vector<std::string>& builtin_generators();
/// Generator dispatch by name with a parameter map (missing keys use defaults).
TriSurface make_builtin(const std::string& generator, const std::map<std::string, double>& params,
                        double h);

// ----------------------------------------------------------------------------
// Validation and doubling
// ----------------------------------------------------------------------------

inline constexpr double kAngleTolerance = 1e-9;

struct VertexAngle {
  int vertex = -1;
  double angle = 0.0;
};

struct ValidationReport {
  bool pass = true;
  std::vector<VertexAngle> failures;  // interior vertices with angle > 2pi
  std::vector<VertexAngle> warnings;  // boundary vertices with angle > pi
  double max_interior_angle = 0.0;
  double gauss_bonnet_residual = 0.0;  // sum of defects - 2 pi chi
};

ValidationReport validate_alexandrov(const TriSurface& s, double tol_angle = kAngleTolerance);

/// Glues the surface to a mirror copy of itself along the boundary.
TriSurface double_surface(const TriSurface& s);

// ----------------------------------------------------------------------------
// Mesh files
// ----------------------------------------------------------------------------

/// Reads an ASCII indexed face set (OBJ subset: `v`, `f`) with optional
/// intrinsic lengths given as `#@len i j L` lines (1-based vertex ids).
TriSurface read_mesh(const std::string& path);
TriSurface parse_mesh(const std::string& text, const std::string& name = "mesh");
std::string write_mesh(const TriSurface& s);

}  // namespace mediatrix::surface
