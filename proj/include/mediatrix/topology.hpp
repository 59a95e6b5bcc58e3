#pragma once

// Graph topology of extracted complexes and the separation / 1-manifold /
// homology checks built on it.

#include <map>
#include <string>
#include <vector>

#include "mediatrix/equidistant.hpp"

namespace mediatrix::topology {

using equidistant::EquidistantComplex;
using metric::FocalSet;
using metric::SampleSet;
using metric::TriSurface;

struct ComplexTopology {
  int V = 0;
  int Eg = 0;
  int C = 0;
  int beta1 = 0;
  std::map<int, int> degree_histogram;  // window_clipped nodes excluded
  bool even_degrees = true;             // over the histogram
};

ComplexTopology cycle_rank(const EquidistantComplex& c);

/// dim H1(X; Z2) = 2 - chi for a closed orientable surface. Throws InputError
/// when the surface has boundary.
int surface_h1_z2(const TriSurface& s);

/// Number of components of a focal set, joining elements closer than
/// `radius`. Elements are the focal points and the face-connected groups of
/// region seeds.
int focal_components(const SampleSet& ss, const FocalSet& k, double radius);

struct SideLabeling {
  std::vector<int> face_label;  // 0 = A side, 1 = B side, -1 = not labelled
  int ell_a = 0;
  int ell_b = 0;
  int h0a = 0;
  int h0b = 0;
  int complement_components = 0;  // sub-grid node graph with E removed
  int complement_a = 0;           // complement components on the A side
  int complement_b = 0;
};

/// Side labels from the sign of f at face centroids, plus the complement of E
/// in the sub-grid. Sub-grid nodes next to crossings absorbed into junctions
/// are removed so that pinched channels do not join separate regions.
SideLabeling side_labeling(const EquidistantComplex& c, int h0a, int h0b);

struct CheckResult {
  std::string check;
  bool pass = false;
  bool inconclusive = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

/// 1 <= beta1 <= h1X + h0A + h0B - 1, plus h1X + 1 when both sets are connected,
/// plus 1 <= ell <= h0 on each side.
CheckResult homology_bound_check(const ComplexTopology& t, int h1x, const SideLabeling& l);

/// Complement components equal ell_A + ell_B, and every sampled point of E has
/// an A-side and a B-side point within `offset` on either side.
CheckResult minimal_separating_check(const EquidistantComplex& c, const SideLabeling& l, double offset = 0.0);

/// Every node that is not window-clipped has degree 2 and the complex is
/// connected. Inconclusive when two clipped ends nearly meet (tangential exit).
CheckResult one_manifold_check(const EquidistantComplex& c);

}  // namespace mediatrix::topology
