#pragma once

// Geodesic distance fields on polyhedral surfaces. Samples are the mesh
// vertices plus evenly spaced Steiner points on every edge; each sample keeps
// a virtual source (the unfolded position of the focal point or pseudo-source
// its shortest path comes from), which makes distances exact across chains of
// flat faces and lets point queries and path traces recover straight segments.

#include <array>
#include <vector>

#include "mediatrix/common.hpp"
#include "mediatrix/surface.hpp"

namespace mediatrix::metric {

using surface::Transform2;
using surface::TriSurface;

/// A point on the surface given in the planar layout frame of a face.
struct SurfacePoint {
  int face = -1;
  Vec2 p{};
};

/// Where a sample sits on the mesh.
struct SamplePlace {
  int vertex = -1;  // mesh vertex, or -1 for Steiner points
  int edge = -1;    // edge of a Steiner point
  double t = 0.0;   // parameter from edge.v0 towards edge.v1
};

/// A sample seen from one of its faces.
struct FaceSample {
  int id = -1;
  Vec2 p{};
  int local_edge = -1;  // face edge carrying a Steiner sample, -1 for vertices
  int corner = -1;      // local corner of a vertex sample, -1 for Steiner
};

class SampleSet {
 public:
  explicit SampleSet(const TriSurface& s, int steiner_per_edge = 3);

  const TriSurface& surface() const { return *surface_; }
  int size() const { return static_cast<int>(places_.size()); }
  int steiner_per_edge() const { return m_; }
  /// Subdivisions per edge; sample spacing is edge length / divisions().
  int divisions() const { return m_ + 1; }
  /// Longest mesh edge; sets absolute geometric tolerances.
  double scale() const { return scale_; }

  const SamplePlace& place(int id) const { return places_[id]; }
  bool is_vertex(int id) const { return id < surface_->num_vertices(); }
  int edge_sample(int e, int k) const { return surface_->num_vertices() + e * m_ + (k - 1); }

  /// Samples lying on the closed face f, sorted by id.
  const std::vector<FaceSample>& on_face(int f) const { return face_samples_[f]; }
  /// Faces containing the sample.
  std::vector<int> faces_of(int id) const;
  /// Coordinates of the sample in the frame of face f (the sample must lie on f).
  Vec2 in_face(int id, int f) const;
  SurfacePoint location(int id) const;

  /// Unfolding from face f across its local edge i into the neighbour.
  const Transform2& across(int f, int i) const { return across_[f][i]; }
  int neighbour(int f, int i) const { return neighbours_[f][i]; }
  /// Local index (0..2) of edge e in face f.
  int local_edge(int f, int e) const;

 private:
  const TriSurface* surface_;
  int m_;
  double scale_;
  std::vector<SamplePlace> places_;
  std::vector<std::vector<FaceSample>> face_samples_;
  std::vector<std::array<Transform2, 3>> across_;
  std::vector<std::array<int, 3>> neighbours_;
};

/// Point-level geometry helpers.
SurfacePoint vertex_point(const TriSurface& s, int v);
std::array<double, 3> barycentric(const TriSurface& s, const SurfacePoint& x);
SurfacePoint from_barycentric(const TriSurface& s, int f, const std::array<double, 3>& b);
/// Vertex within `tol` of x, or -1.
int near_vertex(const TriSurface& s, const SurfacePoint& x, double tol = 1e-9);
/// Local edge of x's face that x lies on (within tol), or -1.
int on_edge(const TriSurface& s, const SurfacePoint& x, double tol = 1e-12);
/// 3D position (requires an embedding).
Vec3 embed(const TriSurface& s, const SurfacePoint& x);
/// Closest surface point to q in the embedding; with sheet >= 0 only faces of
/// that copy of a doubled surface are searched.
SurfacePoint locate(const TriSurface& s, Vec3 q, int sheet = -1);
/// Point given in the uv chart: periodic (u, v) on a torus, (r, phi) on a cone.
SurfacePoint locate_uv(const TriSurface& s, Vec2 uv);

// ----------------------------------------------------------------------------
// Focal sets and fields
// ----------------------------------------------------------------------------

/// A sample with a prescribed distance and the point realizing it.
struct Seed {
  int sample = -1;
  double dist = 0.0;
  int face = -1;  // frame of `source`; must contain the sample
  Vec2 source{};
};

/// Focal set resolved onto a sample set: exact points plus region seeds.
struct FocalSet {
  std::vector<SurfacePoint> points;
  std::vector<Seed> seeds;
  bool empty() const { return points.empty() && seeds.empty(); }
};

struct SampleState {
  double dist = 0.0;
  double sigma = 0.0;  // distance already accumulated at the virtual source
  int src_face = -1;   // frame of `src`
  Vec2 src{};          // virtual source
  int anchor = -1;     // sample acting as pseudo-source, -1 for the focal set
};

class DistanceField {
 public:
  DistanceField(const SampleSet& samples, std::vector<SampleState> states, FocalSet focal);

  const SampleSet& samples() const { return *samples_; }
  const TriSurface& surface() const { return samples_->surface(); }
  int size() const { return static_cast<int>(states_.size()); }
  double at(int id) const { return states_[id].dist; }
  const SampleState& state(int id) const { return states_[id]; }
  const std::vector<SampleState>& states() const { return states_; }
  const FocalSet& focal() const { return focal_; }

 private:
  const SampleSet* samples_;
  std::vector<SampleState> states_;
  FocalSet focal_;
};

/// Multi-source propagation. Throws InputError on an empty focal set.
DistanceField distance_to_set(const SampleSet& samples, const FocalSet& focal);

/// One way of reaching K from a query point.
struct Candidate {
  double value = 0.0;
  Vec2 source{};        // virtual source in the query face frame
  double sigma = 0.0;
  int anchor = -1;
  bool straight = false;  // virtual-source candidate (straight segment to K)
};

/// All candidates for x (x's face plus, on an edge, its neighbour).
std::vector<Candidate> candidates(const DistanceField& field, const SurfacePoint& x);
/// d(x, K).
double evaluate(const DistanceField& field, const SurfacePoint& x);

// ----------------------------------------------------------------------------
// Paths, directions, angles
// ----------------------------------------------------------------------------

struct GeodesicPath {
  std::vector<SurfacePoint> points;
  std::vector<double> arclength;  // cumulative, same size as points
  double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
};

/// Shortest path from x to K (unit-speed polyline). Throws InputError if x ∈ K.
GeodesicPath trace_shortest_path(const DistanceField& field, const SurfacePoint& x);
/// Path starting towards a specific candidate source.
GeodesicPath trace_from(const DistanceField& field, const SurfacePoint& x, const Candidate& c);
/// Point at arc length t along the path.
SurfacePoint point_along(const TriSurface& s, const GeodesicPath& path, double t);

/// Endpoints in K of all near-minimal paths from x.
std::vector<SurfacePoint> metric_projection(const DistanceField& field, const SurfacePoint& x,
                                            double tol_rel = 1e-3);

struct Direction {
  double angle = 0.0;  // in [0, total) measured from the +x axis of the base face
  int tag = 0;         // 0 = A, 1 = B
  double length = 0.0;
  Vec2 source{};  // virtual source in the base face frame
  double sigma = 0.0;
  int anchor = -1;
};

struct DirectionSet {
  SurfacePoint base;
  double total_angle = kTwoPi;
  double delta = 0.0;  // clustering threshold used
  std::vector<Direction> directions;  // sorted by angle
};

inline constexpr double kTolRel = 1e-3;

/// Clustering threshold max(8h / d, 0.05).
double direction_threshold(double h, double d);

/// Θ_K at x (tag 0).
DirectionSet directions(const DistanceField& field, const SurfacePoint& x, double h,
                        double tol_rel = kTolRel);
/// (Θ_A, Θ_B) at x. Throws ResolutionError when an A- and a B-direction are
/// closer than the clustering threshold.
std::pair<DirectionSet, DirectionSet> directions_at(const DistanceField& a, const DistanceField& b,
                                                    const SurfacePoint& x, double h,
                                                    double tol_rel = kTolRel);

/// Angular distance on a circle of circumference `total`, capped at π.
double angle_between(double a1, double a2, double total);
/// Tangent-cone distance between (angle, radius) pairs.
double cone_distance(double total, double angle1, double r1, double angle2, double r2);

/// Straight walk of length t from x in direction `angle` (face frame of x).
/// Throws ResolutionError if the walk leaves the surface or hits a vertex.
SurfacePoint geodesic_walk(const TriSurface& s, const SurfacePoint& x, double angle, double t);

struct DerivativeEstimate {
  double estimate = 0.0;
  double predicted = 0.0;
  double min_angle = 0.0;
};

/// Right derivative of d(γ(t), K) at t = 0 along the geodesic leaving x in
/// `angle`, Richardson-extrapolated over the given steps (decreasing).
DerivativeEstimate one_sided_derivative(const DistanceField& field, const SurfacePoint& x,
                                        double angle, const std::vector<double>& steps, double h);

}  // namespace mediatrix::metric
