#pragma once

// Equidistant sets of two points on the real line under a few metrics.

#include <string>
#include <vector>

namespace mediatrix::metric_lab {

enum class LineMetric { kStandard, kBoundedRatio, kTruncated };

const char* to_string(LineMetric m);
/// "standard", "d1" / "bounded_ratio", "d2" / "truncated". Throws InputError.
LineMetric parse_line_metric(const std::string& name);

/// |x - y|, |x - y| / (1 + |x - y|), or min(|x - y|, 1).
double line_distance(LineMetric m, double x, double y);

struct Piece {
  double lo = 0.0;
  double hi = 0.0;
  bool interval = false;  // false: a single root, lo == hi
};

inline constexpr double kFlatZero = 1e-12;

/// Maximal intervals and isolated points of {x in [lo, hi] : d(x, p) = d(x, q)}
/// from samples spaced `resolution` apart. A run of at least three samples with
/// |g| < kFlatZero is an interval; its ends and isolated roots are refined by
/// bisection. Throws InputError when p == q, the domain misses p or q, or the
/// resolution is not positive.
std::vector<Piece> line_equidistant(LineMetric m, double p, double q, double lo, double hi, double resolution);

}  // namespace mediatrix::metric_lab
