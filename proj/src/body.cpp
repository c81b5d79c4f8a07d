#include "conelab/body.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace conelab {
namespace {

constexpr std::size_t kAnalyticGrid = 720;
constexpr std::size_t kContainmentGrid = 4096;
constexpr double kSublinearityTol = 1e-10;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Tridiagonal solve with constant sub/super diagonal 1 and diagonal `diag`,
// except the first and last diagonal entries which may differ.
std::vector<double> solve_tridiagonal(std::vector<double> diag, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (rhs[i] - x[i + 1]) / diag[i];
  }
  return x;
}

// Periodic system M_{i-1} + 4 M_i + M_{i+1} = rhs_i, by Sherman-Morrison.
std::vector<double> solve_cyclic(const std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  const double gamma = -4.0;
  std::vector<double> diag(n, 4.0);
  diag[0] = 4.0 - gamma;
  diag[n - 1] = 4.0 - 1.0 / gamma;
  const std::vector<double> x = solve_tridiagonal(diag, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = 1.0;
  const std::vector<double> z = solve_tridiagonal(diag, u);
  const double fact = (x[0] + x[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - fact * z[i];
  return out;
}

double ellipse_radial(const Ellipse& e, double psi) {
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  return std::sqrt(e.semiaxis_a * e.semiaxis_a * c * c + e.semiaxis_b * e.semiaxis_b * s * s);
}

Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double g_at(const ConvexBody2& body, Point2 x, double theta) {
  return body.support(theta) - dot(unit(theta), x);
}

struct GapMinimum {
  double theta = 0.0;
  double value = 0.0;
  int sign_changes = 0;
};

// Scans g(theta) = h(theta) - <u, x> on the body's grid and polishes the
// smallest sample by golden-section search.
GapMinimum minimize_gap(const ConvexBody2& body, Point2 x) {
  const std::size_t n = std::max(body.grid_size(), kAnalyticGrid);
  const double step = kTwoPi / static_cast<double>(n);
  std::vector<double> g(n);
  std::size_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = g_at(body, x, step * static_cast<double>(i));
    if (g[i] < g[best]) best = i;
  }
  int changes = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((g[i] < 0.0) != (g[(i + 1) % n] < 0.0)) ++changes;
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = step * (static_cast<double>(best) - 1.0);
  double b = step * (static_cast<double>(best) + 1.0);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double gc = g_at(body, x, c);
  double gd = g_at(body, x, d);
  for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - invphi * (b - a);
      gc = g_at(body, x, c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + invphi * (b - a);
      gd = g_at(body, x, d);
    }
  }
  GapMinimum out;
  out.theta = 0.5 * (a + b);
  out.value = std::min(g_at(body, x, out.theta), g[best]);
  if (g[best] < out.value) out.theta = step * static_cast<double>(best);
  out.sign_changes = changes;
  return out;
}

// Root of g on [lo, hi] given sign(g(lo)) != sign(g(hi)).
double bisect_gap(const ConvexBody2& body, Point2 x, double lo, double hi) {
  const bool lo_negative = g_at(body, x, lo) < 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if ((g_at(body, x, mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SupportingLine make_supporting_line(const ConvexBody2& body, Point2 x, double theta) {
  SupportingLine s;
  s.theta = theta;
  const Dir2 u = Dir2::from_angle(theta);
  const double h = body.support(theta);
  s.half_plane = HalfPlane2{u, h};
  s.line = Line2(u, h);
  s.touch = body.support_point(theta);
  const Point2 d = s.touch - x;
  s.travel = norm(d) > 0.0 ? Dir2(d) : Dir2(perp(u.vec()));
  return s;
}

void validate_table(const std::vector<double>& values) {
  if (values.size() < ConvexBody2::kMinTableSize) {
    throw GeometryError(ErrorKind::InvalidBody, "support table needs at least " +
                                                    std::to_string(ConvexBody2::kMinTableSize) +
                                                    " samples");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw GeometryError(ErrorKind::InvalidBody, "support table has non-finite value");
  }
}

}  // namespace

SupportTable::SupportTable(std::vector<double> values) : values_(std::move(values)) {
  validate_table(values_);
  const std::size_t n = values_.size();
  step_ = kTwoPi / static_cast<double>(n);
  std::vector<double> rhs(n);
  const double scale = 6.0 / (step_ * step_);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] = scale * (values_[(i + 1) % n] - 2.0 * values_[i] + values_[(i + n - 1) % n]);
  }
  second_ = solve_cyclic(rhs);
}

double SupportTable::value(double theta) const {
  const std::size_t n = values_.size();
  const double t = wrap_angle(theta) / step_;
  const auto i = std::min(static_cast<std::size_t>(t), n - 1);
  const std::size_t j = (i + 1) % n;
  const double s = t - static_cast<double>(i);
  const double r = 1.0 - s;
  return r * values_[i] + s * values_[j] +
         step_ * step_ / 6.0 * ((r * r * r - r) * second_[i] + (s * s * s - s) * second_[j]);
}

double SupportTable::derivative(double theta) const {
  const std::size_t n = values_.size();
  const double t = wrap_angle(theta) / step_;
  const auto i = std::min(static_cast<std::size_t>(t), n - 1);
  const std::size_t j = (i + 1) % n;
  const double s = t - static_cast<double>(i);
  const double r = 1.0 - s;
  return (values_[j] - values_[i]) / step_ +
         step_ / 6.0 * (-(3.0 * r * r - 1.0) * second_[i] + (3.0 * s * s - 1.0) * second_[j]);
}

ConvexBody2 ConvexBody2::disc(Point2 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius) || !std::isfinite(center.x) || !std::isfinite(center.y)) {
    throw GeometryError(ErrorKind::InvalidBody, "disc needs a finite center and positive radius");
  }
  return ConvexBody2(Disc{center, radius});
}

ConvexBody2 ConvexBody2::ellipse(Point2 center, double semiaxis_a, double semiaxis_b, double rotation) {
  if (!(semiaxis_a > 0.0) || !(semiaxis_b > 0.0) || !std::isfinite(semiaxis_a) ||
      !std::isfinite(semiaxis_b) || !std::isfinite(rotation) || !std::isfinite(center.x) ||
      !std::isfinite(center.y)) {
    throw GeometryError(ErrorKind::InvalidBody, "ellipse needs positive finite semiaxes");
  }
  return ConvexBody2(Ellipse{center, semiaxis_a, semiaxis_b, rotation});
}

ConvexBody2 ConvexBody2::generic(std::vector<double> support_table) {
  SupportTable table(std::move(support_table));
  const auto v = table.values();
  const std::size_t n = v.size();
  const double c = std::cos(table.step());
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = table.step() * static_cast<double>(i);
    if (!(v[i] + table.value(theta + kPi) > 0.0)) {
      throw GeometryError(ErrorKind::InvalidBody, "support table has non-positive width");
    }
    // h(u_{i-1}) + h(u_{i+1}) >= h(u_{i-1} + u_{i+1}) = 2 cos(step) h(u_i).
    const double turn = v[(i + n - 1) % n] + v[(i + 1) % n] - 2.0 * c * v[i];
    if (turn < -kSublinearityTol) {
      throw GeometryError(ErrorKind::InvalidBody,
                          "support table is not convex near sample " + std::to_string(i));
    }
  }
  return ConvexBody2(std::move(table));
}

BodyKind ConvexBody2::kind() const {
  return std::visit(Overloaded{[](const Disc&) { return BodyKind::Disc; },
                               [](const Ellipse&) { return BodyKind::Ellipse; },
                               [](const SupportTable&) { return BodyKind::Generic; }},
                    shape_);
}

double ConvexBody2::support(double theta) const {
  const Point2 u = unit(theta);
  return std::visit(Overloaded{[&](const Disc& d) { return dot(u, d.center) + d.radius; },
                               [&](const Ellipse& e) {
                                 return dot(u, e.center) + ellipse_radial(e, theta - e.rotation);
                               },
                               [&](const SupportTable& t) { return t.value(theta); }},
                    shape_);
}

double ConvexBody2::support_derivative(double theta) const {
  const Point2 up = perp(unit(theta));
  return std::visit(Overloaded{[&](const Disc& d) { return dot(up, d.center); },
                               [&](const Ellipse& e) {
                                 const double psi = theta - e.rotation;
                                 const double a2 = e.semiaxis_a * e.semiaxis_a;
                                 const double b2 = e.semiaxis_b * e.semiaxis_b;
                                 return dot(up, e.center) +
                                        (b2 - a2) * std::sin(psi) * std::cos(psi) / ellipse_radial(e, psi);
                               },
                               [&](const SupportTable& t) { return t.derivative(theta); }},
                    shape_);
}

Point2 ConvexBody2::support_point(double theta) const {
  return std::visit(
      Overloaded{[&](const Disc& d) { return d.center + d.radius * unit(theta); },
                 [&](const Ellipse& e) {
                   const double psi = theta - e.rotation;
                   const double r = ellipse_radial(e, psi);
                   const Point2 local{e.semiaxis_a * e.semiaxis_a * std::cos(psi) / r,
                                      e.semiaxis_b * e.semiaxis_b * std::sin(psi) / r};
                   return e.center + rotate(local, e.rotation);
                 },
                 [&](const SupportTable& t) {
                   return t.value(theta) * unit(theta) + t.derivative(theta) * perp(unit(theta));
                 }},
      shape_);
}

std::size_t ConvexBody2::grid_size() const {
  if (const auto* t = std::get_if<SupportTable>(&shape_)) return t->size();
  return kAnalyticGrid;
}

ConvexBody2 ConvexBody2::translated(Point2 v) const {
  return std::visit(Overloaded{[&](const Disc& d) { return disc(d.center + v, d.radius); },
                               [&](const Ellipse& e) {
                                 return ellipse(e.center + v, e.semiaxis_a, e.semiaxis_b, e.rotation);
                               },
                               [&](const SupportTable& t) {
                                 std::vector<double> out(t.values().begin(), t.values().end());
                                 for (std::size_t i = 0; i < out.size(); ++i) {
                                   out[i] += dot(unit(t.step() * static_cast<double>(i)), v);
                                 }
                                 return generic(std::move(out));
                               }},
                    shape_);
}

ConvexBody2 ConvexBody2::rotated(double angle) const {
  return std::visit(Overloaded{[&](const Disc& d) { return disc(rotate(d.center, angle), d.radius); },
                               [&](const Ellipse& e) {
                                 return ellipse(rotate(e.center, angle), e.semiaxis_a, e.semiaxis_b,
                                                e.rotation + angle);
                               },
                               [&](const SupportTable& t) {
                                 std::vector<double> out(t.size());
                                 for (std::size_t i = 0; i < out.size(); ++i) {
                                   out[i] = t.value(t.step() * static_cast<double>(i) - angle);
                                 }
                                 return generic(std::move(out));
                               }},
                    shape_);
}

ConvexBody2 ConvexBody2::reflected(const Line2& mirror) const {
  // Reflecting a direction of angle theta across the mirror gives angle
  // 2*gamma - theta, gamma the mirror's direction angle.
  const double gamma = mirror.direction().angle();
  return std::visit(
      Overloaded{[&](const Disc& d) { return disc(reflect_point(d.center, mirror), d.radius); },
                 [&](const Ellipse& e) {
                   return ellipse(reflect_point(e.center, mirror), e.semiaxis_a, e.semiaxis_b,
                                  2.0 * gamma - e.rotation);
                 },
                 [&](const SupportTable& t) {
                   const Point2 n = mirror.normal().vec();
                   std::vector<double> out(t.size());
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     const double theta = t.step() * static_cast<double>(i);
                     out[i] = t.value(2.0 * gamma - theta) + 2.0 * mirror.offset() * dot(unit(theta), n);
                   }
                   return generic(std::move(out));
                 }},
      shape_);
}

double support(const ConvexBody2& body, double theta) { return body.support(theta); }
Point2 support_point(const ConvexBody2& body, double theta) { return body.support_point(theta); }

TangentPair tangent_lines(const ConvexBody2& body, Point2 x) {
  double center_theta = 0.0;
  double gap = 0.0;
  double half = 0.0;
  bool closed_form = false;
  if (const auto* d = std::get_if<Disc>(&body.shape())) {
    // g(theta) = r - |x - c| cos(theta - alpha).
    const Point2 v = x - d->center;
    const double dist = norm(v);
    center_theta = std::atan2(v.y, v.x);
    gap = d->radius - dist;
    if (gap < -kExteriorMargin) {
      half = std::acos(d->radius / dist);
      closed_form = true;
    }
  } else {
    const GapMinimum m = minimize_gap(body, x);
    if (m.sign_changes > 2) {
      throw GeometryError(ErrorKind::ConvexityViolation,
                          "more than two supporting lines through the viewpoint");
    }
    center_theta = m.theta;
    gap = m.value;
  }
  if (gap >= 0.0) {
    throw GeometryError(ErrorKind::InteriorPoint, "viewpoint is not exterior to the body");
  }
  if (gap > -kExteriorMargin) {
    throw GeometryError(ErrorKind::TangentDegenerate, "viewpoint lies on the body boundary");
  }

  double t1 = 0.0;
  double t2 = 0.0;
  if (closed_form) {
    t1 = center_theta - half;
    t2 = center_theta + half;
  } else {
    // g(theta) + g(theta + pi) is the width, so g > 0 at center_theta +- pi.
    t1 = bisect_gap(body, x, center_theta - kPi, center_theta);
    t2 = bisect_gap(body, x, center_theta, center_theta + kPi);
  }
  if (t2 - t1 < 1e-9) {
    throw GeometryError(ErrorKind::TangentDegenerate, "the two supporting lines coincide");
  }
  return {make_supporting_line(body, x, t1), make_supporting_line(body, x, t2)};
}

const SupportingLine& oriented_choice(const TangentPair& pair) {
  // The inward normal of the supporting half-plane is -u(theta).
  const auto right_frame = [](const SupportingLine& s) {
    return cross(s.travel.vec(), -1.0 * unit(s.theta));
  };
  return right_frame(pair.first) > right_frame(pair.second) ? pair.first : pair.second;
}

SupportingLine oriented_tangent(const ConvexBody2& body, Point2 x) {
  return oriented_choice(tangent_lines(body, x));
}

double boundary_gap(const ConvexBody2& body, Point2 z) {
  if (const auto* d = std::get_if<Disc>(&body.shape())) {
    return d->radius - distance(z, d->center);
  }
  return minimize_gap(body, z).value;
}

double width(const ConvexBody2& body, double theta) {
  return body.support(theta) + body.support(theta + kPi);
}

double width_defect(const ConvexBody2& body) {
  const std::size_t n = body.grid_size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = width(body, kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return hi - lo;
}

bool constant_width(const ConvexBody2& body, double tol) { return width_defect(body) < tol; }

double central_symmetry_defect(const ConvexBody2& body, Point2 center) {
  const std::size_t n = body.grid_size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double forward = body.support(theta) - dot(unit(theta), center);
    const double backward = body.support(theta + kPi) + dot(unit(theta), center);
    worst = std::max(worst, std::abs(forward - backward));
  }
  return worst;
}

ContainmentReport containment_check(const ConvexBody2& body) {
  return containment_check(body, Circle2({0.0, 0.0}, 1.0));
}

ContainmentReport containment_check(const ConvexBody2& body, const Circle2& outer) {
  double farthest = 0.0;
  if (const auto* d = std::get_if<Disc>(&body.shape())) {
    farthest = distance(d->center, outer.center) + d->radius;
  } else {
    for (std::size_t i = 0; i < kContainmentGrid; ++i) {
      const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(kContainmentGrid);
      farthest = std::max(farthest, distance(body.support_point(theta), outer.center));
    }
  }
  ContainmentReport r;
  r.margin = outer.radius - farthest;
  r.inside_open_unit_disc = r.margin > 0.0;
  return r;
}

double hausdorff_distance(const ConvexBody2& a, const ConvexBody2& b, std::size_t samples) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    worst = std::max(worst, std::abs(a.support(theta) - b.support(theta)));
  }
  return worst;
}

}  // namespace conelab
