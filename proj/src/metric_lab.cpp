#include "mediatrix/metric_lab.hpp"

#include <cmath>

#include "mediatrix/common.hpp"

namespace mediatrix::metric_lab {

const char* to_string(LineMetric m) {
  switch (m) {
    case LineMetric::kStandard: return "standard";
    case LineMetric::kBoundedRatio: return "d1";
    case LineMetric::kTruncated: return "d2";
  }
  return "?";
}

LineMetric parse_line_metric(const std::string& name) {
  if (name == "standard") return LineMetric::kStandard;
  if (name == "d1" || name == "bounded_ratio") return LineMetric::kBoundedRatio;
  if (name == "d2" || name == "truncated") return LineMetric::kTruncated;
  throw InputError("unknown line metric '" + name + "'");
}

double line_distance(LineMetric m, double x, double y) {
  const double d = std::fabs(x - y);
  switch (m) {
    case LineMetric::kStandard: return d;
    case LineMetric::kBoundedRatio: return d / (1.0 + d);
    case LineMetric::kTruncated: return d < 1.0 ? d : 1.0;
  }
  return d;
}

std::vector<Piece> line_equidistant(LineMetric m, double p, double q, double lo, double hi, double resolution) {
  if (p == q) throw InputError("line_equidistant: p and q coincide");
  if (!(resolution > 0.0)) throw InputError("line_equidistant: resolution must be positive");
  if (!(lo < hi) || p < lo || p > hi || q < lo || q > hi)
    throw InputError("line_equidistant: domain must contain p and q");
  auto g = [&](double x) { return line_distance(m, x, p) - line_distance(m, x, q); };
  auto zero = [&](double x) { return std::fabs(g(x)) < kFlatZero; };
  const long n = static_cast<long>(std::floor((hi - lo) / resolution));
  auto x_at = [&](long i) { return i == n + 1 ? hi : lo + static_cast<double>(i) * resolution; };
  const long last = (x_at(n) < hi) ? n + 1 : n;

  // Boundary between a zero sample and a nonzero one.
  auto edge = [&](double in_zero, double out) {
    for (int it = 0; it < 200 && std::fabs(in_zero - out) > 0.0; ++it) {
      double mid = 0.5 * (in_zero + out);
      if (mid == in_zero || mid == out) break;
      (zero(mid) ? in_zero : out) = mid;
    }
    return in_zero;
  };
  auto root = [&](double a, double b) {
    double ga = g(a);
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      double gm = g(mid);
      if (gm == 0.0) return mid;
      if ((gm < 0.0) == (ga < 0.0)) a = mid, ga = gm;
      else b = mid;
    }
    return 0.5 * (a + b);
  };

  std::vector<Piece> out;
  long i = 0;
  while (i <= last) {
    double x = x_at(i);
    if (zero(x)) {
      long j = i;
      while (j + 1 <= last && zero(x_at(j + 1))) ++j;
      if (j - i + 1 >= 3) {
        double a = i == 0 ? lo : edge(x, x_at(i - 1));
        double b = j == last ? hi : edge(x_at(j), x_at(j + 1));
        out.push_back({a, b, true});
      } else {
        double c = 0.5 * (x + x_at(j));
        out.push_back({c, c, false});
      }
      i = j + 1;
      continue;
    }
    if (i + 1 <= last) {
      double x1 = x_at(i + 1);
      double g0 = g(x), g1 = g(x1);
      if (!zero(x1) && (g0 < 0.0) != (g1 < 0.0)) {
        double r = root(x, x1);
        out.push_back({r, r, false});
      }
    }
    ++i;
  }
  return out;
}

}  // namespace mediatrix::metric_lab
