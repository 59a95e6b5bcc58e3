#include "mediatrix/measure.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace mediatrix::measure {

double hausdorff_length(const EquidistantComplex& c) {
  if (c.edges.empty()) throw GeometryError("hausdorff_length: empty complex");
  return c.total_length();
}

std::vector<double> dyadic_scales(double extent, int first, int last) {
  if (!(extent > 0.0) || first > last) throw InputError("dyadic_scales: bad range");
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(std::ldexp(extent, -k));
  return out;
}

namespace {

double t_quantile_975(int dof) {
  static const double table[] = {0.0,   12.706, 4.303, 3.182, 2.776, 2.571, 2.447,
                                 2.365, 2.306,  2.262, 2.228, 2.201, 2.179, 2.160};
  if (dof <= 0) return 0.0;
  if (dof < 14) return table[dof];
  return 1.96 + 2.4 / dof;
}

}  // namespace

std::vector<double> default_scales(double extent) { return dyadic_scales(extent, 1, 10); }

std::vector<double> feature_scales(double separation) { return dyadic_scales(2.0 * separation, 0, 9); }

DimensionEstimate box_counting_dimension(const std::vector<Vec2>& points, const std::vector<double>& scales,
                                         int shifts) {
  if (shifts < 1) throw InputError("box_counting_dimension: shifts must be positive");
  if (points.size() < kMinBoxPoints)
    throw InputError("box_counting_dimension: need at least " + std::to_string(kMinBoxPoints) + " points, got " +
                     std::to_string(points.size()));
  if (scales.size() < 6) throw InputError("box_counting_dimension: need at least 6 scales");
  for (std::size_t i = 1; i < scales.size(); ++i)
    if (!(scales[i] < scales[i - 1]) || !(scales[i] > 0.0))
      throw InputError("box_counting_dimension: scales must be positive and strictly decreasing");
  if (scales.front() / scales.back() < 100.0)
    throw InputError("box_counting_dimension: scales span less than two decades");

  Vec2 lo = points.front();
  for (const auto& p : points) lo.x = std::min(lo.x, p.x), lo.y = std::min(lo.y, p.y);
  DimensionEstimate d;
  d.scales = scales;
  std::unordered_set<std::int64_t> boxes;
  boxes.reserve(points.size());
  for (double delta : scales) {
    double total = 0.0;
    for (int sx = 0; sx < shifts; ++sx)
      for (int sy = 0; sy < shifts; ++sy) {
        boxes.clear();
        const double ox = delta * sx / shifts, oy = delta * sy / shifts;
        for (const auto& p : points) {
          auto ix = static_cast<std::int64_t>(std::floor((p.x - lo.x + ox) / delta));
          auto iy = static_cast<std::int64_t>(std::floor((p.y - lo.y + oy) / delta));
          boxes.insert((ix << 32) ^ iy);
        }
        total += static_cast<double>(boxes.size());
      }
    d.counts.push_back(total / (shifts * shifts));
  }
  d.fit_first = 1;
  d.fit_last = static_cast<int>(scales.size()) - 2;
  const int m = d.fit_last - d.fit_first + 1;
  double sx = 0, sy = 0;
  for (int i = d.fit_first; i <= d.fit_last; ++i) {
    sx += std::log(1.0 / scales[i]);
    sy += std::log(d.counts[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (int i = d.fit_first; i <= d.fit_last; ++i) {
    double x = std::log(1.0 / scales[i]) - mx, y = std::log(d.counts[i]) - my;
    sxx += x * x;
    sxy += x * y;
  }
  d.slope = sxy / sxx;
  d.intercept = my - d.slope * mx;
  double ssr = 0;
  for (int i = d.fit_first; i <= d.fit_last; ++i) {
    double r = std::log(d.counts[i]) - (d.intercept + d.slope * std::log(1.0 / scales[i]));
    ssr += r * r;
  }
  d.residual = std::sqrt(ssr / m);
  d.ci_half_width = m > 2 ? t_quantile_975(m - 2) * std::sqrt(ssr / (m - 2) / sxx) : 0.0;
  return d;
}

std::vector<Vec2> planar_points(const EquidistantComplex& c, double step) {
  if (!(step > 0.0)) throw InputError("planar_points: step must be positive");
  const auto& s = c.field->surface();
  std::vector<Vec2> out;
  for (const auto& e : c.edges) {
    double carry = 0.0;  // arc length until the next point
    for (const auto& seg : e.segments) {
      Vec3 a = metric::embed(s, {seg.face, seg.a});
      Vec3 b = metric::embed(s, {seg.face, seg.b});
      double len = distance(a, b);
      double t = carry;
      while (t <= len) {
        Vec3 p = len > 0.0 ? a + (b - a) * (t / len) : a;
        out.push_back({p.x, p.y});
        t += step;
      }
      carry = t - len;
    }
  }
  return out;
}

// ----------------------------------------------------------------------------
// Planar scenes
// ----------------------------------------------------------------------------

Polygon koch_polygon(int level) {
  if (level < 0 || level > 8) throw InputError("koch: level must be in [0, 8]");
  const double r = 1.0 / std::sqrt(3.0);
  Polygon p;
  for (int k = 0; k < 3; ++k) {
    double a = kPi / 2 + kTwoPi * k / 3;
    p.push_back({r * std::cos(a), r * std::sin(a)});
  }
  // CCW; the new apex sits to the right of each directed edge (outside).
  const double c = std::cos(-kPi / 3), sn = std::sin(-kPi / 3);
  for (int l = 0; l < level; ++l) {
    Polygon q;
    q.reserve(p.size() * 4);
    for (std::size_t i = 0; i < p.size(); ++i) {
      Vec2 a = p[i], b = p[(i + 1) % p.size()];
      Vec2 d = (b - a) * (1.0 / 3.0);
      Vec2 m1 = a + d, m2 = a + d * 2.0;
      Vec2 apex = m1 + Vec2{c * d.x - sn * d.y, sn * d.x + c * d.y};
      q.push_back(a);
      q.push_back(m1);
      q.push_back(apex);
      q.push_back(m2);
    }
    p = std::move(q);
  }
  return p;
}

PlanarScene koch_scene(int level) {
  PlanarScene s;
  s.a.push_back(koch_polygon(level));
  s.b_is_complement = true;
  Vec2 lo = s.a[0][0], hi = s.a[0][0];
  for (const auto& v : s.a[0]) {
    lo.x = std::min(lo.x, v.x), lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x), hi.y = std::max(hi.y, v.y);
  }
  const double margin = 0.1 * std::max(hi.x - lo.x, hi.y - lo.y);
  s.lo = {lo.x - margin, lo.y - margin};
  s.hi = {hi.x + margin, hi.y + margin};
  return s;
}

PlanarScene swapped(const PlanarScene& s) {
  PlanarScene out = s;
  if (s.b_is_complement) {
    // Even-odd fill: a rectangle just covering the window, minus the A polygons.
    const double pad = 0.01 * std::max(s.hi.x - s.lo.x, s.hi.y - s.lo.y);
    Vec2 lo{s.lo.x - pad, s.lo.y - pad}, hi{s.hi.x + pad, s.hi.y + pad};
    out.a.clear();
    out.a.push_back({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
    for (const auto& p : s.a) out.a.push_back(p);
  } else {
    std::swap(out.a, out.b);
  }
  return out;
}

PlanarScene comb_scene(int teeth, double gap) {
  if (teeth < 2) throw InputError("comb: need at least 2 teeth");
  if (!(gap > 0.0)) throw InputError("comb: gap must be positive");
  const double g = gap, w = 0.5 * g, pitch = 2.0 * (w + g), len = 4.0 * g;
  const double margin = 3.0 * g;
  const double width = (teeth - 1) * pitch + 2.0 * w + g;
  auto P = [&](double x, double y) { return Vec2{x + margin, y + margin}; };
  // A: spine y in [0, g], teeth up to g + len.
  Polygon a;
  a.push_back(P(0, 0));
  a.push_back(P(width, 0));
  a.push_back(P(width, g));
  for (int i = teeth - 1; i >= 0; --i) {
    double x0 = i * pitch;
    a.push_back(P(x0 + w, g));
    a.push_back(P(x0 + w, g + len));
    a.push_back(P(x0, g + len));
    a.push_back(P(x0, g));
  }
  // The first tooth's left side continues the spine's left side.
  a.pop_back();
  // B: spine y in [2g + len, 3g + len], teeth down to 2g.
  const double top = 3.0 * g + len, base = 2.0 * g + len;
  Polygon b;
  b.push_back(P(width, top));
  b.push_back(P(0, top));
  b.push_back(P(0, base));
  for (int i = 0; i < teeth; ++i) {
    double x0 = i * pitch + w + g;
    b.push_back(P(x0, base));
    b.push_back(P(x0, 2.0 * g));
    b.push_back(P(x0 + w, 2.0 * g));
    b.push_back(P(x0 + w, base));
  }
  // The last tooth's right side continues the spine's right side.
  b.pop_back();
  PlanarScene s;
  s.a.push_back(a);
  s.b.push_back(b);
  s.lo = {0.0, 0.0};
  s.hi = {width + 2.0 * margin, top + 2.0 * margin};
  return s;
}

bool inside(const Polygon& poly, Vec2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

namespace {

double boundary_distance(const Polygon& poly, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    Vec2 d = b - a;
    double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    best = std::min(best, distance(p, a + d * t));
  }
  return best;
}

double set_distance(const std::vector<Polygon>& polys, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : polys) best = std::min(best, polygon_distance(q, p));
  return best;
}

// Inside flags of the A polygons on the (n+1)^2 corners, row by row.
std::vector<char> membership(const PlanarScene& s, int n) {
  std::vector<char> in(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  const double dx = (s.hi.x - s.lo.x) / n, dy = (s.hi.y - s.lo.y) / n;
  std::vector<double> xs;
  for (int j = 0; j <= n; ++j) {
    const double y = s.lo.y + j * dy;
    for (const auto& poly : s.a) {
      xs.clear();
      for (std::size_t i = 0, k = poly.size() - 1; i < poly.size(); k = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[k];
        if ((a.y > y) != (b.y > y)) xs.push_back((b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x);
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t q = 0; q + 1 < xs.size(); q += 2) {
        int i0 = std::max(0, static_cast<int>(std::ceil((xs[q] - s.lo.x) / dx)));
        int i1 = std::min(n, static_cast<int>(std::ceil((xs[q + 1] - s.lo.x) / dx)) - 1);
        for (int i = i0; i <= i1; ++i) in[static_cast<std::size_t>(j) * (n + 1) + i] ^= 1;
      }
    }
  }
  return in;
}

std::vector<Vec2> changed_cells(const PlanarScene& s, int n, const std::vector<char>& neg) {
  const double dx = (s.hi.x - s.lo.x) / n, dy = (s.hi.y - s.lo.y) / n;
  auto at = [&](int i, int j) { return neg[static_cast<std::size_t>(j) * (n + 1) + i]; };
  std::vector<Vec2> out;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int c = at(i, j) + at(i + 1, j) + at(i, j + 1) + at(i + 1, j + 1);
      if (c != 0 && c != 4) out.push_back({s.lo.x + (i + 0.5) * dx, s.lo.y + (j + 0.5) * dy});
    }
  return out;
}

}  // namespace

double polygon_distance(const Polygon& p, Vec2 x) { return inside(p, x) ? 0.0 : boundary_distance(p, x); }

std::vector<Vec2> membership_boundary(const PlanarScene& s, int n) {
  if (n < 2) throw InputError("membership_boundary: grid too small");
  return changed_cells(s, n, membership(s, n));
}

std::vector<Vec2> sign_change_points(const PlanarScene& s, int n) {
  if (n < 2) throw InputError("sign_change_points: grid too small");
  if (s.b_is_complement) return membership_boundary(s, n);
  const double dx = (s.hi.x - s.lo.x) / n, dy = (s.hi.y - s.lo.y) / n;
  std::vector<double> f(static_cast<std::size_t>(n + 1) * (n + 1));
  auto at = [&](int i, int j) -> double& { return f[static_cast<std::size_t>(j) * (n + 1) + i]; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      Vec2 p{s.lo.x + i * dx, s.lo.y + j * dy};
      double v = set_distance(s.a, p) - set_distance(s.b, p);
      at(i, j) = v == 0.0 ? 1e-300 : v;
    }
  // Marching triangles (two per cell), each zero segment resampled at a
  // quarter of the grid spacing.
  const double step = 0.25 * std::min(dx, dy);
  std::vector<Vec2> out;
  auto tri = [&](Vec2 p0, double f0, Vec2 p1, double f1, Vec2 p2, double f2) {
    Vec2 pts[3] = {p0, p1, p2};
    double fs[3] = {f0, f1, f2};
    Vec2 z[2];
    int nz = 0;
    for (int k = 0; k < 3; ++k) {
      double fa = fs[k], fb = fs[(k + 1) % 3];
      if ((fa < 0.0) == (fb < 0.0)) continue;
      z[nz++] = pts[k] + (pts[(k + 1) % 3] - pts[k]) * (fa / (fa - fb));
    }
    if (nz != 2) return;
    double len = distance(z[0], z[1]);
    int m = std::max(1, static_cast<int>(std::ceil(len / step)));
    for (int k = 0; k < m; ++k) out.push_back(z[0] + (z[1] - z[0]) * (static_cast<double>(k) / m));
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      Vec2 p00{s.lo.x + i * dx, s.lo.y + j * dy}, p10{p00.x + dx, p00.y}, p01{p00.x, p00.y + dy},
          p11{p00.x + dx, p00.y + dy};
      tri(p00, at(i, j), p10, at(i + 1, j), p11, at(i + 1, j + 1));
      tri(p00, at(i, j), p11, at(i + 1, j + 1), p01, at(i, j + 1));
    }
  return out;
}

}  // namespace mediatrix::measure
