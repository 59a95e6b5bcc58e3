#pragma once

// Zero set of f = d(., A) - d(., B) as an embedded graph. Each face is split
// into a barycentric sub-grid whose edge nodes are the Steiner samples, f is
// interpolated linearly on the sub-triangles, and the resulting crossings are
// chained into polylines. Places where separate arcs of the piecewise-linear
// zero set nearly touch are merged into junction nodes.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mediatrix/metric_engine.hpp"

namespace mediatrix::equidistant {

using metric::DistanceField;
using metric::SampleSet;
using metric::SurfacePoint;
using metric::TriSurface;

class SignedField {
 public:
  /// f = a - b. `bias` is the sign given to values that vanish (|f| < eps);
  /// the relabelled field uses the opposite bias so that -f is mirrored exactly.
  SignedField(const DistanceField& a, const DistanceField& b, int bias = +1);

  const DistanceField& a() const { return *a_; }
  const DistanceField& b() const { return *b_; }
  const SampleSet& samples() const { return a_->samples(); }
  const TriSurface& surface() const { return a_->surface(); }
  int bias() const { return bias_; }
  double eps_zero() const { return eps_zero_; }

  double at(int sample) const { return values_[sample]; }
  const std::vector<double>& values() const { return values_; }
  /// Exact f at an arbitrary point.
  double evaluate(const SurfacePoint& x) const;
  /// f with vanishing values replaced by bias * eps_zero.
  double perturbed(double v) const { return std::fabs(v) < eps_zero_ ? bias_ * eps_zero_ : v; }

  /// The field for the relabelled scene (B, A).
  SignedField relabeled() const;

 private:
  const DistanceField* a_;
  const DistanceField* b_;
  int bias_;
  double eps_zero_;
  std::vector<double> values_;
};

/// Builds the signed field; throws InputError when the sample sets differ.
SignedField signed_field(const DistanceField& a, const DistanceField& b);

/// inf { d(a, b) : a in A, b in B } as seen by the two fields.
double focal_separation(const DistanceField& a, const DistanceField& b);

enum class NodeKind { kJunction, kWindowClipped, kLoopMarker };
const char* to_string(NodeKind k);

struct Node {
  NodeKind kind = NodeKind::kJunction;
  SurfacePoint where;
  int degree = 0;
  int crossing = -1;              // crossing the node sits on
  std::vector<int> absorbed;      // crossings merged into a junction
};

struct Segment {
  int face = -1;
  Vec2 a{};
  Vec2 b{};
  double length() const { return distance(a, b); }
};

struct PolyEdge {
  int from = -1;
  int to = -1;
  std::vector<int> crossings;     // interior crossing ids in order
  std::vector<Segment> segments;  // consecutive segments share endpoints
  double length = 0.0;
};

/// A zero of the interpolated field on the sub-grid edge (lo, hi).
struct Crossing {
  int lo = -1;
  int hi = -1;
  double t = 0.0;  // from lo to hi
  SurfacePoint where;
};

/// Sub-grid used for extraction; node ids below samples().size() are samples.
struct SubGrid {
  int divisions = 0;
  int num_nodes = 0;
  std::vector<double> values;                 // perturbed f at every node
  std::vector<std::array<int, 4>> triangles;  // three nodes + face
  /// Position of a node in the frame of face f (node must lie on f).
  std::vector<SurfacePoint> interior;         // interior nodes, indexed from samples().size()
};

struct ExtractOptions {
  double h = 0.0;             // resolution; defaults to the surface target edge length
  double snap_factor = 0.25;  // junction snap radius = snap_factor * h
  double min_separation_factor = 10.0;
  bool enforce_separation = true;
};

class EquidistantComplex {
 public:
  std::vector<Node> nodes;
  std::vector<PolyEdge> edges;
  std::vector<Crossing> crossings;
  SubGrid grid;
  double h = 0.0;
  double snap = 0.0;
  const SignedField* field = nullptr;

  double total_length() const;
  int count(NodeKind k) const;
  /// Point at arc length s along edge e.
  SurfacePoint point_on_edge(int e, double s) const;
  /// Structural equality (node kinds/positions/degrees, edge crossings, lengths).
  bool same_as(const EquidistantComplex& o) const;
};

/// Throws GeometryError when the focal sets are closer than
/// min_separation_factor * h and enforcement is on.
EquidistantComplex extract_equidistant(const SignedField& f, const ExtractOptions& opt = {});

// ----------------------------------------------------------------------------
// Wedges and bisectors
// ----------------------------------------------------------------------------

struct Wedge {
  SurfacePoint base;
  double from = 0.0;   // CCW start direction
  double to = 0.0;     // CCW end direction
  int from_tag = 0;    // 0 = A, 1 = B
  double width = 0.0;  // CCW angular width
  double bisector = 0.0;
  bool obtuse = false;       // half-width exceeds diam - half-width
  double predicted = 0.0;    // angle from the bisector to either side
};

/// Wedges between angularly adjacent A/B directions on a circle of
/// circumference `total`.
std::vector<Wedge> wedges_at(const SurfacePoint& x, const metric::DirectionSet& a,
                             const metric::DirectionSet& b, double total);

/// Unit tangent direction (angle in x's face frame) of edge e at arc length s,
/// by central difference over `window`. Returns nullopt when the window does
/// not fit inside the edge.
std::optional<double> tangent_angle(const EquidistantComplex& c, int e, double s, double window);

/// Angle between the tangent line and the wedge bisector.
double bisector_residual(double tangent, const Wedge& w);

struct SamplePoint {
  int edge = -1;
  double s = 0.0;
  SurfacePoint where;
};

/// Deterministic arc-length sampling of all edges with the given step,
/// staying `margin` away from edge ends.
std::vector<SamplePoint> sample_edges(const EquidistantComplex& c, double step, double margin);

/// True when an interior vertex whose angle defect |2π - θ| is at least
/// `min_defect` lies within distance r of x. Polygonal seams and fine
/// curvature stay below the default.
bool near_cone_point(const TriSurface& s, const SurfacePoint& x, double r, double min_defect = 0.25);

}  // namespace mediatrix::equidistant
