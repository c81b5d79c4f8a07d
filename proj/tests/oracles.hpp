#pragma once

// Independent reference computations used to freeze expected values. None of
// these go through the library's support-function or root-finding code.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace oracle {

constexpr double kPi = std::numbers::pi;

// Chapple/Euler: d^2 = R^2 - 2 R r for a bicentric triangle.
inline double euler_triangle_inradius(double outer, double offset) {
  return (outer * outer - offset * offset) / (2.0 * outer);
}

// Fuss: 1/(R-d)^2 + 1/(R+d)^2 = 1/r^2 for a bicentric quadrilateral.
inline double fuss_quadrilateral_inradius(double outer, double offset) {
  const double a = 1.0 / ((outer - offset) * (outer - offset));
  const double b = 1.0 / ((outer + offset) * (outer + offset));
  return 1.0 / std::sqrt(a + b);
}

// Other root of t^2 + 2 b t + c = 0 on the circle; x on the circle means c = 0.
inline std::pair<double, double> second_point_on_circle(double cx, double cy, double r, double x, double y,
                                                        double dx, double dy) {
  const double b = dx * (x - cx) + dy * (y - cy);
  const double c = (x - cx) * (x - cx) + (y - cy) * (y - cy) - r * r;
  const double disc = std::sqrt(b * b - c);
  const double t1 = -b + disc;
  const double t2 = -b - disc;
  const double t = std::abs(t1) > std::abs(t2) ? t1 : t2;
  return {x + t * dx, y + t * dy};
}

struct TangentDirections {
  double d1x, d1y, d2x, d2y;
};

// Tangent directions from (x, y) to the ellipse (a cos t, b sin t) rotated by
// phi about (cx, cy), by brute-force extremal viewing angle over a dense
// boundary sampling.
inline TangentDirections brute_force_tangents(double cx, double cy, double a, double b, double phi, double x,
                                              double y, int samples = 400000) {
  const double rx = cx - x;
  const double ry = cy - y;
  double best_lo = 1e300, best_hi = -1e300;
  double lo_x = 0, lo_y = 0, hi_x = 0, hi_y = 0;
  const double c = std::cos(phi), s = std::sin(phi);
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    const double ex = a * std::cos(t), ey = b * std::sin(t);
    const double vx = cx + c * ex - s * ey - x;
    const double vy = cy + s * ex + c * ey - y;
    const double ang = std::atan2(rx * vy - ry * vx, rx * vx + ry * vy);
    if (ang < best_lo) { best_lo = ang; lo_x = vx; lo_y = vy; }
    if (ang > best_hi) { best_hi = ang; hi_x = vx; hi_y = vy; }
  }
  const double n1 = std::hypot(lo_x, lo_y), n2 = std::hypot(hi_x, hi_y);
  return {lo_x / n1, lo_y / n1, hi_x / n2, hi_y / n2};
}

// Distance from (px, py) to the bisector at (x, y) of the sector spanned by
// two unit directions.
inline double distance_to_bisector(const TangentDirections& t, double x, double y, double px, double py) {
  double bx = t.d1x + t.d2x, by = t.d1y + t.d2y;
  const double n = std::hypot(bx, by);
  bx /= n;
  by /= n;
  return std::abs(-by * (px - x) + bx * (py - y));
}

}  // namespace oracle
