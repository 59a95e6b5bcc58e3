#pragma once

// Length and box-counting dimension of equidistant sets, and the planar
// fractal / comb scenes.

#include <cstdint>
#include <vector>

#include "mediatrix/equidistant.hpp"

namespace mediatrix::measure {

using equidistant::EquidistantComplex;

/// Sum of polyline edge lengths. Throws GeometryError on an empty complex.
double hausdorff_length(const EquidistantComplex& c);

struct DimensionEstimate {
  std::vector<double> scales;        // strictly decreasing
  std::vector<double> counts;        // boxes hit per scale, averaged over grid shifts
  int fit_first = 0;                 // least-squares window [fit_first, fit_last]
  int fit_last = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;             // RMS of the fit in log space
  double ci_half_width = 0.0;        // 95% interval on the slope
};

inline constexpr std::size_t kMinBoxPoints = 10000;

/// Dyadic scales extent / 2^k for k = first..last.
std::vector<double> dyadic_scales(double extent, int first, int last);

/// Box counting on grids anchored at the bounding-box corner, averaged over
/// shifts by multiples of delta / shifts in each axis; the least-squares fit
/// drops the coarsest and finest scale. Throws InputError with fewer than
/// kMinBoxPoints points, fewer than 6 scales, or a span under two decades.
DimensionEstimate box_counting_dimension(const std::vector<Vec2>& points, const std::vector<double>& scales,
                                         int shifts = 4);

/// Window scales extent / 2^k, k = 1..10.
std::vector<double> default_scales(double extent);
/// Feature scales 2 * separation / 2^k, k = 0..9, below the size where the
/// focal sets' shapes make E look space-filling.
std::vector<double> feature_scales(double separation);

/// Points along the complex (embedded) every `step` of arc length.
std::vector<Vec2> planar_points(const EquidistantComplex& c, double step);

// ----------------------------------------------------------------------------
// Planar scenes
// ----------------------------------------------------------------------------

using Polygon = std::vector<Vec2>;

struct PlanarScene {
  std::vector<Polygon> a;
  std::vector<Polygon> b;
  bool b_is_complement = false;  // B = window minus the interior of A
  Vec2 lo{};  // window
  Vec2 hi{};
};

/// Koch snowflake polygon of the given level, side 1, centred at the origin.
Polygon koch_polygon(int level);

/// A = bounded complement component of the level-n snowflake curve, B = the
/// unbounded one (clipped to the window). Level must be in [0, 8].
PlanarScene koch_scene(int level);

/// The same scene with A and B exchanged.
PlanarScene swapped(const PlanarScene& s);

/// Two interlocking combs with `teeth` teeth each; every gap between them is
/// `gap`. Requires teeth >= 2 and gap > 0.
PlanarScene comb_scene(int teeth, double gap);

bool inside(const Polygon& p, Vec2 x);
/// Euclidean distance to the closed polygonal region.
double polygon_distance(const Polygon& p, Vec2 x);

/// Centres of the cells of an n x n grid over the window whose corners are
/// not all on the same side of the A polygons (scanline fill).
std::vector<Vec2> membership_boundary(const PlanarScene& s, int n);

/// Zero contour of f = d(., A) - d(., B) on an n x n grid over the window
/// (linear on two triangles per cell), sampled at a quarter of the spacing.
std::vector<Vec2> sign_change_points(const PlanarScene& s, int n);

}  // namespace mediatrix::measure
