#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "conelab/errors.hpp"

namespace conelab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances shared by the planar primitives. Callers that need different
// thresholds pass their own instance.
struct Tolerances {
  double point_on_line = 1e-9;
  double unit_norm = 1e-12;
  double coincident_angle = 1e-12;
};

inline constexpr Tolerances kDefaultTolerances{};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }
// Counterclockwise quarter turn.
constexpr Point2 perp(Point2 a) { return {-a.y, a.x}; }

// Unit vector. Construction normalizes; direct component access is read-only.
class Dir2 {
 public:
  Dir2() = default;
  Dir2(double ux, double uy);
  explicit Dir2(Point2 v) : Dir2(v.x, v.y) {}

  static Dir2 from_angle(double theta) { return Dir2(Unchecked{}, std::cos(theta), std::sin(theta)); }

  double ux() const { return ux_; }
  double uy() const { return uy_; }
  Point2 vec() const { return {ux_, uy_}; }
  double angle() const { return std::atan2(uy_, ux_); }
  Dir2 operator-() const { return Dir2(Unchecked{}, -ux_, -uy_); }

 private:
  struct Unchecked {};
  Dir2(Unchecked, double ux, double uy) : ux_(ux), uy_(uy) {}

  double ux_ = 1.0;
  double uy_ = 0.0;
};

// The line {y : <normal, y> = offset}, kept in canonical form offset >= 0.
// When offset is exactly zero the normal is chosen with a positive first
// nonzero component.
class Line2 {
 public:
  Line2() = default;
  Line2(Dir2 normal, double offset);

  static Line2 through(Point2 a, Point2 b);
  static Line2 through_with_direction(Point2 a, Dir2 direction);

  Dir2 normal() const { return normal_; }
  double offset() const { return offset_; }
  Dir2 direction() const { return Dir2(perp(normal_.vec())); }
  // Closest point of the line to the origin.
  Point2 foot() const { return offset_ * normal_.vec(); }

  double signed_distance(Point2 p) const { return dot(normal_.vec(), p) - offset_; }
  double distance(Point2 p) const { return std::abs(signed_distance(p)); }

 private:
  Dir2 normal_;
  double offset_ = 0.0;
};

// Closed half-plane {y : <normal, y> <= offset}. Unlike Line2 the side matters,
// so no canonicalization is applied.
struct HalfPlane2 {
  Dir2 normal;
  double offset = 0.0;

  double slack(Point2 p) const { return offset - dot(normal.vec(), p); }
  Line2 boundary() const { return Line2(normal, offset); }
};

struct Circle2 {
  Point2 center;
  double radius = 1.0;

  Circle2() = default;
  Circle2(Point2 c, double r);

  Point2 point_at(double theta) const {
    return {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
  }
  double angle_of(Point2 p) const { return std::atan2(p.y - center.y, p.x - center.x); }
};

bool approx_equal(const Line2& a, const Line2& b, double tol);

Point2 reflect_point(Point2 p, const Line2& mirror);
Line2 reflect_line(const Line2& line, const Line2& mirror);

// Both angle bisectors of two lines meeting at apex. The first one bisects
// the angle between the line directions as stored, the second is its
// perpendicular; callers choose which is relevant.
std::pair<Line2, Line2> bisectors(const Line2& l1, const Line2& l2, Point2 apex,
                                  const Tolerances& tol = kDefaultTolerances);

struct ChordEnd {
  Point2 point;
  bool tangent = false;
};

ChordEnd second_intersection(const Circle2& circle, Point2 x, const Line2& line,
                             const Tolerances& tol = kDefaultTolerances);

// Acute angle between two lines, in [0, pi/2].
double angle_with(const Line2& l1, const Line2& l2);

// Wraps an angle into [0, 2pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

// Shortest arc distance between two angles on the unit circle.
inline double arc_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}

}  // namespace conelab
