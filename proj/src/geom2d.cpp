#include "conelab/geom2d.hpp"

#include <string>

namespace conelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::CoincidentLines: return "coincident-lines";
    case ErrorKind::InteriorPoint: return "interior-point";
    case ErrorKind::TangentDegenerate: return "tangent-degenerate";
    case ErrorKind::ConvexityViolation: return "convexity-violation";
    case ErrorKind::InvalidBody: return "invalid-body";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::BracketFailure: return "bracket-failure";
    case ErrorKind::EmptyIntersection: return "empty-intersection";
    case ErrorKind::NoExteriorPoints: return "no-exterior-points";
    case ErrorKind::DegenerateSignature: return "degenerate-signature";
    case ErrorKind::UnboundedSection: return "unbounded-section";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::SectionEmpty: return "section-empty";
    case ErrorKind::PlaneMissesSphere: return "plane-misses-sphere";
  }
  return "unknown";
}

Dir2::Dir2(double ux, double uy) {
  const double n = std::hypot(ux, uy);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError(ErrorKind::Precondition, "direction vector must be finite and nonzero");
  }
  ux_ = ux / n;
  uy_ = uy / n;
}

Line2::Line2(Dir2 normal, double offset) : normal_(normal), offset_(offset) {
  if (!std::isfinite(offset)) {
    throw GeometryError(ErrorKind::Precondition, "line offset must be finite");
  }
  const bool flip = offset_ < 0.0 ||
                    (offset_ == 0.0 && (normal_.ux() < 0.0 || (normal_.ux() == 0.0 && normal_.uy() < 0.0)));
  if (flip) {
    normal_ = -normal_;
    offset_ = -offset_;
  }
}

Line2 Line2::through(Point2 a, Point2 b) {
  const Point2 d = b - a;
  if (norm(d) == 0.0) {
    throw GeometryError(ErrorKind::Precondition, "line through two identical points");
  }
  return through_with_direction(a, Dir2(d));
}

Line2 Line2::through_with_direction(Point2 a, Dir2 direction) {
  const Dir2 n(perp(direction.vec()));
  return Line2(n, dot(n.vec(), a));
}

Circle2::Circle2(Point2 c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw GeometryError(ErrorKind::Precondition, "circle radius must be positive");
  }
}

bool approx_equal(const Line2& a, const Line2& b, double tol) {
  const Point2 na = a.normal().vec();
  const Point2 nb = b.normal().vec();
  if (norm(na - nb) < tol && std::abs(a.offset() - b.offset()) < tol) return true;
  // Near-origin lines may canonicalize to opposite normals.
  return a.offset() < tol && b.offset() < tol && norm(na + nb) < tol &&
         std::abs(a.offset() + b.offset()) < tol;
}

Point2 reflect_point(Point2 p, const Line2& mirror) {
  const Point2 u = mirror.normal().vec();
  return p - 2.0 * mirror.signed_distance(p) * u;
}

Line2 reflect_line(const Line2& line, const Line2& mirror) {
  const Point2 a = line.foot();
  const Point2 b = a + line.direction().vec();
  return Line2::through(reflect_point(a, mirror), reflect_point(b, mirror));
}

std::pair<Line2, Line2> bisectors(const Line2& l1, const Line2& l2, Point2 apex,
                                  const Tolerances& tol) {
  if (l1.distance(apex) > tol.point_on_line || l2.distance(apex) > tol.point_on_line) {
    throw GeometryError(ErrorKind::Precondition, "bisectors: apex is not on both lines");
  }
  if (angle_with(l1, l2) < tol.coincident_angle) {
    throw GeometryError(ErrorKind::CoincidentLines, "bisectors: lines coincide");
  }
  const double a1 = l1.direction().angle();
  const double a2 = l2.direction().angle();
  const double mid = 0.5 * (a1 + a2);
  return {Line2::through_with_direction(apex, Dir2::from_angle(mid)),
          Line2::through_with_direction(apex, Dir2::from_angle(mid + 0.5 * kPi))};
}

ChordEnd second_intersection(const Circle2& circle, Point2 x, const Line2& line,
                             const Tolerances& tol) {
  if (std::abs(distance(x, circle.center) - circle.radius) > tol.point_on_line) {
    throw GeometryError(ErrorKind::Precondition, "second_intersection: x is not on the circle");
  }
  if (line.distance(x) > tol.point_on_line) {
    throw GeometryError(ErrorKind::Precondition, "second_intersection: x is not on the line");
  }
  // |x + t d - c|^2 = R^2 has roots t = 0 and t = -2 <d, x - c>.
  const Point2 d = line.direction().vec();
  const double t = -2.0 * dot(d, x - circle.center);
  if (std::abs(t) <= tol.unit_norm * circle.radius) {
    return {x, true};
  }
  return {x + t * d, false};
}

double angle_with(const Line2& l1, const Line2& l2) {
  const Point2 a = l1.normal().vec();
  const Point2 b = l2.normal().vec();
  return std::atan2(std::abs(cross(a, b)), std::abs(dot(a, b)));
}

}  // namespace conelab
