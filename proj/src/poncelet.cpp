#include "conelab/poncelet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace conelab {
namespace {

constexpr double kContainmentMargin = 1e-9;
constexpr double kChordSupportTol = 1e-8;
constexpr std::size_t kConvergenceWindow = 100;
constexpr double kConvergenceRatio = 0.99;
constexpr std::size_t kClipPolygonSides = 4096;
constexpr std::size_t kRegionTableSize = 1440;
constexpr int kMonotonicityGrid = 32;

void require_inside(const Circle2& outer, const ConvexBody2& inner) {
  const ContainmentReport r = containment_check(inner, outer);
  if (!(r.margin > kContainmentMargin)) {
    throw GeometryError(ErrorKind::Containment, "inner body is not strictly inside the outer circle");
  }
}

void require_on_circle(const Circle2& outer, Point2 x) {
  if (std::abs(distance(x, outer.center) - outer.radius) > kDefaultTolerances.point_on_line) {
    throw GeometryError(ErrorKind::Precondition, "start point is not on the outer circle");
  }
}

// One step from the vertex at angle `theta`; the new vertex is snapped back
// onto the circle through its angle so that long orbits do not drift.
PonceletStep step_from_angle(const Circle2& outer, const ConvexBody2& inner, double theta) {
  const Point2 x = outer.point_at(theta);
  PonceletStep s;
  s.chord = oriented_tangent(inner, x);
  const ChordEnd end = second_intersection(outer, x, s.chord.line);
  if (end.tangent) {
    throw GeometryError(ErrorKind::TangentDegenerate, "chord is tangent to the outer circle");
  }
  s.next_angle = outer.angle_of(end.point);
  s.next = outer.point_at(s.next_angle);
  s.arc = wrap_angle(s.next_angle - theta);
  return s;
}

double total_turning(const Circle2& outer, const ConvexBody2& inner, double theta, int steps) {
  double total = 0.0;
  for (int i = 0; i < steps; ++i) {
    const PonceletStep s = step_from_angle(outer, inner, theta);
    total += s.arc;
    theta = s.next_angle;
  }
  return total;
}

bool looks_converging(const std::vector<double>& arcs) {
  const std::size_t n = std::min(arcs.size(), kConvergenceWindow + 1);
  if (n < 2) return false;
  const auto first = arcs.end() - static_cast<std::ptrdiff_t>(n);
  if (std::all_of(first, arcs.end(), [](double a) { return a < 1e-13; })) return true;
  for (auto it = first; it + 1 != arcs.end(); ++it) {
    if (!(*(it + 1) < kConvergenceRatio * *it)) return false;
  }
  return true;
}

// Sutherland-Hodgman clip of a convex polygon by {y : slack(y) >= 0}.
std::vector<Point2> clip(const std::vector<Point2>& poly, const HalfPlane2& hp) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % poly.size()];
    const double sa = hp.slack(a);
    const double sb = hp.slack(b);
    if (sa >= 0.0) out.push_back(a);
    if ((sa >= 0.0) != (sb >= 0.0)) {
      const double t = sa / (sa - sb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

ConvexBody2 region_from_half_planes(const Circle2& outer, std::span<const HalfPlane2> half_planes) {
  std::vector<Point2> poly(kClipPolygonSides);
  for (std::size_t i = 0; i < kClipPolygonSides; ++i) {
    poly[i] = outer.point_at(kTwoPi * static_cast<double>(i) / static_cast<double>(kClipPolygonSides));
  }
  for (const HalfPlane2& hp : half_planes) {
    poly = clip(poly, hp);
    if (poly.size() < 3) {
      throw GeometryError(ErrorKind::EmptyIntersection, "supporting half-planes have empty intersection");
    }
  }
  std::vector<double> table(kRegionTableSize);
  for (std::size_t i = 0; i < kRegionTableSize; ++i) {
    const Point2 u = unit(kTwoPi * static_cast<double>(i) / static_cast<double>(kRegionTableSize));
    double h = dot(u, poly.front());
    for (const Point2& v : poly) h = std::max(h, dot(u, v));
    table[i] = h;
  }
  return ConvexBody2::generic(std::move(table));
}

void require_supporting(const HalfPlane2& hp, const ConvexBody2& inner) {
  const double excess = inner.support(hp.normal.angle()) - hp.offset;
  if (excess > kChordSupportTol) {
    throw GeometryError(ErrorKind::EmptyIntersection, "chord does not support the inner body");
  }
}

}  // namespace

std::string_view to_string(Closure c) {
  switch (c) {
    case Closure::Closed: return "closed";
    case Closure::OpenDense: return "open_dense";
    case Closure::OpenConverging: return "open_converging";
  }
  return "unknown";
}

PonceletStep poncelet_step(const Circle2& outer, const ConvexBody2& inner, Point2 x) {
  require_inside(outer, inner);
  require_on_circle(outer, x);
  return step_from_angle(outer, inner, outer.angle_of(x));
}

PonceletState poncelet_polygon(const Circle2& outer, const ConvexBody2& inner, Point2 x, int max_steps,
                               double closure_tol) {
  if (max_steps < 3) throw GeometryError(ErrorKind::Precondition, "max_steps must be at least 3");
  if (!(closure_tol > 0.0)) throw GeometryError(ErrorKind::Precondition, "closure tolerance must be positive");
  require_inside(outer, inner);
  require_on_circle(outer, x);

  PonceletState st;
  st.outer = outer;
  const double start = outer.angle_of(x);
  st.angles.push_back(start);
  st.vertices.push_back(outer.point_at(start));
  st.closure_defect = kPi;

  double theta = start;
  for (int n = 1; n <= max_steps; ++n) {
    const PonceletStep s = step_from_angle(outer, inner, theta);
    st.chords.push_back(s.chord.line);
    st.half_planes.push_back(s.chord.half_plane);
    st.arcs.push_back(s.arc);
    st.total_turning += s.arc;
    const double defect = arc_distance(s.next_angle, start);
    if (defect < closure_tol) {
      st.classification = Closure::Closed;
      st.k = n;
      st.winding = static_cast<int>(std::lround(st.total_turning / kTwoPi));
      st.closure_defect = defect;
      return st;
    }
    st.closure_defect = std::min(st.closure_defect, defect);
    theta = s.next_angle;
    st.angles.push_back(theta);
    st.vertices.push_back(s.next);
  }

  st.steps_exhausted = true;
  if (looks_converging(st.arcs)) {
    st.classification = Closure::OpenConverging;
    st.limit_angle = wrap_angle(st.angles.back());
  } else {
    st.classification = Closure::OpenDense;
  }
  return st;
}

double rotation_number(const Circle2& outer, const ConvexBody2& inner, Point2 x, int steps) {
  if (steps < 100) throw GeometryError(ErrorKind::Precondition, "rotation_number needs at least 100 steps");
  require_inside(outer, inner);
  require_on_circle(outer, x);
  return total_turning(outer, inner, outer.angle_of(x), steps) / (kTwoPi * static_cast<double>(steps));
}

PorismReport porism_check(const Circle2& outer, const ConvexBody2& inner, int k, int num_starts, double tol,
                          int max_steps) {
  if (num_starts < 1) throw GeometryError(ErrorKind::Precondition, "porism_check needs at least one start");
  PorismReport report;
  report.k = k;
  report.entries.reserve(static_cast<std::size_t>(num_starts));
  bool all_same = true;
  for (int i = 0; i < num_starts; ++i) {
    const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(num_starts);
    const PonceletState st = poncelet_polygon(outer, inner, outer.point_at(angle), std::max(max_steps, 3), tol);
    PorismEntry e{angle, st.classification, st.k, st.winding, st.closure_defect};
    if (i == 0) report.winding = e.winding;
    all_same = all_same && e.classification == Closure::Closed && e.k == k && e.winding == report.winding;
    report.max_defect = std::max(report.max_defect, e.defect);
    report.entries.push_back(e);
  }
  report.passed = all_same;
  return report;
}

FerResult fer_solve(const Circle2& outer, Point2 center, int k) {
  if (k < 3) throw GeometryError(ErrorKind::Precondition, "fer_solve needs k >= 3");
  const double offset = distance(center, outer.center);
  if (!(offset < outer.radius)) {
    throw GeometryError(ErrorKind::Precondition, "center must lie strictly inside the outer circle");
  }
  const double start = 0.0;
  const double target = kTwoPi;
  // Larger inner circles give shorter steps, so the k-step turning decreases
  // with the radius; the root is where it equals one full turn.
  const auto excess = [&](double rho) {
    return total_turning(outer, ConvexBody2::disc(center, rho), start, k) - target;
  };

  const double room = outer.radius - offset;
  double lo = 1e-9 * room;
  double hi = room * (1.0 - 1e-7);

  double previous = excess(lo);
  for (int i = 1; i <= kMonotonicityGrid; ++i) {
    const double rho = lo + (hi - lo) * static_cast<double>(i) / kMonotonicityGrid;
    const double value = excess(rho);
    if (!(value < previous)) {
      throw GeometryError(ErrorKind::BracketFailure,
                          "turning is not strictly decreasing in the radius near " + std::to_string(rho));
    }
    previous = value;
  }
  if (!(excess(lo) > 0.0 && excess(hi) < 0.0)) {
    throw GeometryError(ErrorKind::BracketFailure, "closure radius is not bracketed");
  }

  FerResult r;
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++r.bisection_steps;
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.radius = 0.5 * (lo + hi);
  r.rotation_residual = std::abs(excess(r.radius)) / (kTwoPi * static_cast<double>(k));
  if (!(r.rotation_residual < 1e-10)) {
    throw GeometryError(ErrorKind::BracketFailure, "bisection converged to a non-closing radius");
  }
  return r;
}

ConvexBody2 q_region(const PonceletState& state, const ConvexBody2& inner) {
  return q_region(std::span<const PonceletState>(&state, 1), inner);
}

ConvexBody2 q_region(std::span<const PonceletState> states, const ConvexBody2& inner) {
  if (states.empty()) throw GeometryError(ErrorKind::Precondition, "q_region needs at least one polygon");
  std::vector<HalfPlane2> half_planes;
  for (const PonceletState& st : states) {
    if (st.half_planes.size() < 3) {
      throw GeometryError(ErrorKind::Precondition, "q_region needs polygons with at least three chords");
    }
    for (const HalfPlane2& hp : st.half_planes) {
      require_supporting(hp, inner);
      half_planes.push_back(hp);
    }
  }
  return region_from_half_planes(states.front().outer, half_planes);
}

}  // namespace conelab
