#include "conelab/harness2d.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace conelab {
namespace {

constexpr double kOnUnitCircleTol = 1e-9;

Line2 bisector_from_pair(const TangentPair& pair, Point2 x) {
  // Unit directions toward the two tangency points; their sum points into
  // the sector that holds the body.
  return Line2::through_with_direction(x, Dir2(pair.first.travel.vec() + pair.second.travel.vec()));
}

void require_inside_unit_disc(const ConvexBody2& body) {
  if (!containment_check(body).inside_open_unit_disc) {
    throw GeometryError(ErrorKind::Containment, "body is not inside the open unit disc");
  }
}

// Distance along `dir` from `inside` to the boundary of the body.
double exit_distance(const ConvexBody2& body, Point2 inside, Point2 dir) {
  double hi = 1.0;
  for (int i = 0; i < 64 && boundary_gap(body, inside + hi * dir) >= 0.0; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (boundary_gap(body, inside + mid * dir) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace

Line2 bisector_line(const ConvexBody2& body, Point2 x) {
  require_inside_unit_disc(body);
  if (std::abs(norm(x) - 1.0) > kOnUnitCircleTol) {
    throw GeometryError(ErrorKind::Precondition, "viewpoint is not on the unit circle");
  }
  return bisector_from_pair(tangent_lines(body, x), x);
}

BlancoReport blanco_defect(const ConvexBody2& body, Point2 p, int num_samples) {
  if (num_samples < 1) throw GeometryError(ErrorKind::Precondition, "blanco_defect needs samples");
  require_inside_unit_disc(body);

  BlancoReport r;
  r.samples = num_samples;
  r.per_sample.reserve(static_cast<std::size_t>(num_samples));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < num_samples; ++j) {
    const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(num_samples);
    const Point2 x = unit(angle);
    const TangentPair pair = tangent_lines(body, x);
    BlancoSample s;
    s.angle = angle;
    s.bisector_distance = bisector_from_pair(pair, x).distance(p);
    s.sigma_radius = oriented_choice(pair).line.distance(p);
    r.defect = std::max(r.defect, s.bisector_distance);
    lo = std::min(lo, s.sigma_radius);
    hi = std::max(hi, s.sigma_radius);
    r.per_sample.push_back(s);
  }
  r.sigma_radius_spread = hi - lo;
  r.mean_sigma_radius =
      std::accumulate(r.per_sample.begin(), r.per_sample.end(), 0.0,
                      [](double acc, const BlancoSample& s) { return acc + s.sigma_radius; }) /
      static_cast<double>(num_samples);

  const std::size_t n = body.grid_size();
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double circle = dot(unit(theta), p) + r.mean_sigma_radius;
    r.hausdorff_to_best_circle = std::max(r.hausdorff_to_best_circle, std::abs(body.support(theta) - circle));
  }
  return r;
}

bool blanco_conclusion_check(const BlancoReport& report, double tol) {
  return report.defect < tol && report.hausdorff_to_best_circle < tol;
}

bool blanco_conclusion_check(const ConvexBody2& body, Point2 p, double tol, int num_samples) {
  return blanco_conclusion_check(blanco_defect(body, p, num_samples), tol);
}

GarnachasReport equal_angle_defect(const ConvexBody2& body, const Line2& mirror, int num_samples) {
  if (num_samples < 1) throw GeometryError(ErrorKind::Precondition, "equal_angle_defect needs samples");
  const Point2 n = mirror.normal().vec();
  const double theta_n = mirror.normal().angle();
  const double s = mirror.offset();
  if (!(body.support(theta_n) > s && body.support(theta_n + kPi) > -s)) {
    throw GeometryError(ErrorKind::Precondition, "mirror line does not cross the body");
  }

  // The segment between the two extreme points along the normal crosses the
  // mirror inside the body.
  const Point2 a = body.support_point(theta_n);
  const Point2 b = body.support_point(theta_n + kPi);
  const double t = (s - dot(n, a)) / (dot(n, b) - dot(n, a));
  const Point2 inside = a + t * (b - a);
  const Point2 dir = mirror.direction().vec();
  const double forward = exit_distance(body, inside, dir);
  const double backward = exit_distance(body, inside, -1.0 * dir);
  const double chord = forward + backward;

  GarnachasReport r;
  int used = 0;
  for (const double sign : {1.0, -1.0}) {
    const double exit = sign > 0.0 ? forward : backward;
    for (int j = 0; j < num_samples; ++j) {
      const double frac = num_samples == 1 ? 0.0 : static_cast<double>(j) / (num_samples - 1);
      const double delta = chord * (0.05 + 2.95 * frac);
      const Point2 z = inside + sign * (exit + delta) * dir;
      if (boundary_gap(body, z) > -kExteriorMargin) continue;
      const TangentPair pair = tangent_lines(body, z);
      const double defect =
          std::abs(angle_with(pair.first.line, mirror) - angle_with(pair.second.line, mirror));
      r.angle_defect = std::max(r.angle_defect, defect);
      ++used;
    }
  }
  if (used == 0) {
    throw GeometryError(ErrorKind::NoExteriorPoints, "no sampled point of the mirror lies outside the body");
  }
  r.symmetry_defect = hausdorff_distance(body, body.reflected(mirror));
  return r;
}

}  // namespace conelab
