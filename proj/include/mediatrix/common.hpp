#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mediatrix {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// ----------------------------------------------------------------------------
// Errors
// ----------------------------------------------------------------------------

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: scene files, mesh files, descriptors, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A geometric precondition was violated (non-manifold mesh, degenerate face,
/// missing boundary, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The discretization cannot resolve the requested quantity.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// ----------------------------------------------------------------------------
// Small vector types
// ----------------------------------------------------------------------------

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr bool operator==(const Vec2&) const = default;
};

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 lerp(Vec2 a, Vec2 b, double t) { return a + (b - a) * t; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;
};

inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }

/// Wraps an angle into [0, period).
inline double wrap_angle(double a, double period = kTwoPi) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  if (r >= period) r -= period;
  return r;
}

/// Interior angle opposite side `c` in a triangle with sides a, b, c.
inline double corner_angle(double a, double b, double c) {
  double cosv = (a * a + b * b - c * c) / (2.0 * a * b);
  if (cosv > 1.0) cosv = 1.0;
  if (cosv < -1.0) cosv = -1.0;
  return std::acos(cosv);
}

}  // namespace mediatrix
