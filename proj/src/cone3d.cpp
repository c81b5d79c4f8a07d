#include "conelab/cone3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelab/harness2d.hpp"

namespace conelab {
namespace {

constexpr double kExteriorLevelMargin = 1e-9;
constexpr double kSymmetryTol = 1e-12;
constexpr double kOnPlaneTol = 1e-12;
constexpr double kViewpointExclusion = 1.1;

// Flip so the first clearly nonzero component is positive.
Vec3 canonical_direction(Vec3 v) {
  v.normalize();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

Vec3 any_perpendicular(const Vec3& n) {
  int axis = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(n[i]) < std::abs(n[axis])) axis = i;
  }
  return n.cross(Vec3::Unit(axis)).normalized();
}

}  // namespace

Quadric3::Quadric3(Vec3 center, Mat3 form) : center_(std::move(center)), form_(std::move(form)) {
  if (!center_.allFinite() || !form_.allFinite()) {
    throw GeometryError(ErrorKind::InvalidBody, "quadric has non-finite entries");
  }
  if ((form_ - form_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * std::max(1.0, form_.cwiseAbs().maxCoeff())) {
    throw GeometryError(ErrorKind::InvalidBody, "quadric form is not symmetric");
  }
  form_ = 0.5 * (form_ + form_.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(form_, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw GeometryError(ErrorKind::InvalidBody, "quadric form is not positive definite");
  }
}

Quadric3 Quadric3::sphere(const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw GeometryError(ErrorKind::InvalidBody, "sphere radius must be positive");
  return Quadric3(center, Mat3::Identity() / (radius * radius));
}

Quadric3 Quadric3::from_axes(const Vec3& center, const Vec3& semiaxes, const Mat3& rotation) {
  if (!(semiaxes.minCoeff() > 0.0)) throw GeometryError(ErrorKind::InvalidBody, "semiaxes must be positive");
  if ((rotation * rotation.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw GeometryError(ErrorKind::InvalidBody, "rotation matrix is not orthogonal");
  }
  const Vec3 inv_sq = semiaxes.cwiseProduct(semiaxes).cwiseInverse();
  return Quadric3(center, rotation.transpose() * inv_sq.asDiagonal() * rotation);
}

Plane3::Plane3(const Vec3& n, double s) : normal(n), offset(s) {
  const double len = n.norm();
  if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(s)) {
    throw GeometryError(ErrorKind::Precondition, "plane needs a finite nonzero normal");
  }
  normal /= len;
  offset /= len;
}

Plane3 Plane3::through(const Vec3& point, const Vec3& normal) {
  const Vec3 n = normal.normalized();
  return Plane3(n, n.dot(point));
}

double Line3::distance(const Vec3& y) const {
  const Vec3 w = y - point;
  return (w - w.dot(direction) * direction).norm();
}

double ConeSpectrum::relative_gap() const { return std::abs(majority[0] - majority[1]) / spectral_radius; }

ConeQuadratic tangent_cone(const Quadric3& body, const Vec3& x) {
  const double q = body.level(x);
  if (!(q > 1.0 + kExteriorLevelMargin)) {
    throw GeometryError(ErrorKind::InteriorPoint, "cone vertex is not strictly exterior to the quadric");
  }
  // A line x + t v is tangent iff the discriminant (v^T A w)^2 - (v^T A v)(q - 1)
  // vanishes, i.e. v^T B v = 0 with B as below.
  const Vec3 aw = body.form() * (x - body.center());
  Mat3 b = (q - 1.0) * body.form() - aw * aw.transpose();
  b = 0.5 * (b + b.transpose()).eval();
  return {x, b};
}

ConeSpectrum cone_spectrum(const ConeQuadratic& cone) {
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(cone.form);
  const Vec3& values = eig.eigenvalues();
  const double radius = values.cwiseAbs().maxCoeff();
  if (!(radius > 0.0) || values.cwiseAbs().minCoeff() <= 1e-12 * radius) {
    throw GeometryError(ErrorKind::DegenerateSignature, "cone form has a vanishing eigenvalue");
  }
  const int negatives = static_cast<int>((values.array() < 0.0).count());
  if (negatives == 0 || negatives == 3) {
    throw GeometryError(ErrorKind::DegenerateSignature, "cone form is definite");
  }
  // Eigenvalues come sorted ascending.
  const int minority = negatives == 1 ? 0 : 2;
  ConeSpectrum s;
  s.spectral_radius = radius;
  s.minority = values[minority];
  s.minority_vector = eig.eigenvectors().col(minority);
  int slot = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == minority) continue;
    s.majority[slot] = values[i];
    s.majority_vectors[slot] = eig.eigenvectors().col(i);
    ++slot;
  }
  return s;
}

Line3 cone_axis(const ConeQuadratic& cone) {
  return {cone.vertex, canonical_direction(cone_spectrum(cone).minority_vector)};
}

bool is_right_circular(const ConeQuadratic& cone, double tol) { return cone_spectrum(cone).relative_gap() <= tol; }

double eigen_gap(const ConeQuadratic& cone) { return cone_spectrum(cone).relative_gap(); }

double symmetric_section_defect(const ConeQuadratic& cone, const Plane3& plane, int samples) {
  if (samples < 2) throw GeometryError(ErrorKind::Precondition, "section defect needs samples");
  const Line3 axis = cone_axis(cone);
  const double along = plane.normal.dot(axis.direction);
  if (std::abs(along) < 1e-12) {
    throw GeometryError(ErrorKind::UnboundedSection, "plane is parallel to the cone axis");
  }
  const Vec3 hit = axis.point + (-plane.signed_distance(axis.point) / along) * axis.direction;
  const PlaneChart chart = PlaneChart::on(plane, hit);

  // Restrict the cone form to the plane: f(z) = z^T G z + 2 m^T z + c0 with
  // z in chart coordinates around the axis point.
  Eigen::Matrix<double, 3, 2> basis;
  basis.col(0) = chart.e1;
  basis.col(1) = chart.e2;
  const Vec3 w0 = hit - cone.vertex;
  const Eigen::Matrix2d g = basis.transpose() * cone.form * basis;
  const Eigen::Vector2d m = basis.transpose() * cone.form * w0;
  const double c0 = w0.dot(cone.form * w0);
  const double det = g.determinant();
  const double scale = g.cwiseAbs().maxCoeff();
  if (!(det > 1e-12 * scale * scale)) {
    throw GeometryError(ErrorKind::UnboundedSection, "plane section of the cone is not bounded");
  }
  if (std::abs(c0) <= 1e-14 * cone.form.cwiseAbs().maxCoeff() * w0.squaredNorm()) {
    throw GeometryError(ErrorKind::UnboundedSection, "plane passes through the cone vertex");
  }

  const auto radial = [&](double phi) {
    const Eigen::Vector2d d(std::cos(phi), std::sin(phi));
    const double a = d.dot(g * d);
    const double b = d.dot(m);
    // a r^2 + 2 b r + c0 = 0; the axis point is inside iff a and c0 differ in sign.
    if (a * c0 >= 0.0) {
      throw GeometryError(ErrorKind::UnboundedSection, "axis point is outside the section");
    }
    return (-b + std::copysign(std::sqrt(b * b - a * c0), a)) / a;
  };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double phi = kPi * static_cast<double>(i) / static_cast<double>(samples);
    worst = std::max(worst, std::abs(radial(phi) - radial(phi + kPi)));
  }
  return worst;
}

ConcurrencyReport axes_concurrency(std::span<const Line3> axes) {
  if (axes.size() < 3) throw GeometryError(ErrorKind::Precondition, "concurrency needs at least three axes");
  Mat3 normal = Mat3::Zero();
  Vec3 rhs = Vec3::Zero();
  for (const Line3& l : axes) {
    const Mat3 proj = Mat3::Identity() - l.direction * l.direction.transpose();
    normal += proj;
    rhs += proj * l.point;
  }
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(normal);
  if (eig.eigenvalues().minCoeff() < 1e-9 * static_cast<double>(axes.size())) {
    throw GeometryError(ErrorKind::RankDeficient, "axes are (nearly) parallel");
  }
  ConcurrencyReport r;
  r.best_point = eig.eigenvectors() *
                 (eig.eigenvectors().transpose() * rhs).cwiseQuotient(eig.eigenvalues());
  double sum_sq = 0.0;
  for (const Line3& l : axes) sum_sq += std::pow(l.distance(r.best_point), 2);
  r.residual = std::sqrt(sum_sq / static_cast<double>(axes.size()));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      const Vec3 c = axes[i].direction.cross(axes[j].direction);
      const double len = c.norm();
      const double gap = len < 1e-12 ? axes[i].distance(axes[j].point)
                                     : std::abs((axes[j].point - axes[i].point).dot(c)) / len;
      r.max_pairwise_gap = std::max(r.max_pairwise_gap, gap);
    }
  }
  return r;
}

PlaneChart PlaneChart::on(const Plane3& plane, const Vec3& origin) {
  PlaneChart c;
  c.origin = origin - plane.signed_distance(origin) * plane.normal;
  c.e1 = any_perpendicular(plane.normal);
  c.e2 = plane.normal.cross(c.e1);
  return c;
}

Point2 PlaneChart::to_plane(const Vec3& y) const {
  const Vec3 w = y - origin;
  return {w.dot(e1), w.dot(e2)};
}

Vec3 PlaneChart::from_plane(Point2 z) const { return origin + z.x * e1 + z.y * e2; }

ConvexBody2 quadric_section(const Quadric3& body, const PlaneChart& chart) {
  Eigen::Matrix<double, 3, 2> basis;
  basis.col(0) = chart.e1;
  basis.col(1) = chart.e2;
  const Vec3 w0 = chart.origin - body.center();
  const Eigen::Matrix2d g = basis.transpose() * body.form() * basis;
  const Eigen::Vector2d m = basis.transpose() * body.form() * w0;
  const double c0 = w0.dot(body.form() * w0) - 1.0;
  const Eigen::Vector2d center = -g.ldlt().solve(m);
  const double kappa = -(c0 + m.dot(center));
  if (!(kappa > 0.0)) {
    throw GeometryError(ErrorKind::SectionEmpty, "plane does not meet the quadric interior");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(g);
  const Eigen::Vector2d major = eig.eigenvectors().col(0);
  return ConvexBody2::ellipse({center.x(), center.y()}, std::sqrt(kappa / eig.eigenvalues()[0]),
                              std::sqrt(kappa / eig.eigenvalues()[1]), std::atan2(major.y(), major.x()));
}

BabelSection babel_section_reduce(const Quadric3& body, const Vec3& p, const Plane3& plane, int num_viewpoints) {
  if (!(body.level(p) < 1.0)) throw GeometryError(ErrorKind::Precondition, "p is not interior to the body");
  if (std::abs(plane.signed_distance(p)) > kOnPlaneTol) {
    throw GeometryError(ErrorKind::Precondition, "section plane does not pass through p");
  }
  if (!(std::abs(plane.offset) < 1.0)) {
    throw GeometryError(ErrorKind::PlaneMissesSphere, "section plane misses the unit sphere");
  }
  const double trace_radius = std::sqrt(1.0 - plane.offset * plane.offset);
  BabelSection out{quadric_section(body, PlaneChart::on(plane, Vec3::Zero())), {}, {}, {}, trace_radius};
  out.chart = PlaneChart::on(plane, Vec3::Zero());

  const auto& e = std::get<Ellipse>(out.section.shape());
  const double k = 1.0 / trace_radius;
  out.section = ConvexBody2::ellipse(k * e.center, k * e.semiaxis_a, k * e.semiaxis_b, e.rotation);
  out.p = k * out.chart.to_plane(p);
  out.viewpoints.reserve(static_cast<std::size_t>(num_viewpoints));
  for (int i = 0; i < num_viewpoints; ++i) {
    out.viewpoints.push_back(unit(kTwoPi * static_cast<double>(i) / static_cast<double>(num_viewpoints)));
  }
  return out;
}

std::vector<Vec3> fibonacci_sphere(int count) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(std::max(count, 0)));
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(1.0 - z * z);
    pts.emplace_back(r * std::cos(golden * i), r * std::sin(golden * i), z);
  }
  return pts;
}

std::vector<Vec3> plane_viewpoints(const Quadric3& body, const Plane3& plane, int count) {
  const PlaneChart chart = PlaneChart::on(plane, body.center());
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(body.form(), Eigen::EigenvaluesOnly);
  const double extent = 3.0 / std::sqrt(eig.eigenvalues().minCoeff());
  int side = std::max(3, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
  if (side % 2 == 0) ++side;
  std::vector<Vec3> pts;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      const double a = extent * (2.0 * i / (side - 1) - 1.0);
      const double b = extent * (2.0 * j / (side - 1) - 1.0);
      const Vec3 y = chart.from_plane({a, b});
      if (body.level(y) > kViewpointExclusion) pts.push_back(y);
    }
  }
  return pts;
}

MariReport mari_harness(const Quadric3& body, const Plane3& plane, int num_samples, const MariOptions& options) {
  MariReport r;
  std::vector<Line3> axes;
  r.all_right_circular = true;
  for (const Vec3& x : plane_viewpoints(body, plane, num_samples)) {
    const ConeQuadratic cone = tangent_cone(body, x);
    const ConeSpectrum spec = cone_spectrum(cone);
    MariViewpoint v;
    v.point = x;
    v.axis = {x, canonical_direction(spec.minority_vector)};
    v.eigen_gap = spec.relative_gap();
    v.right_circular = v.eigen_gap <= options.right_circular_tol;
    r.all_right_circular = r.all_right_circular && v.right_circular;
    r.max_eigen_gap = std::max(r.max_eigen_gap, v.eigen_gap);
    axes.push_back(v.axis);
    r.viewpoints.push_back(v);
  }
  r.concurrency = axes_concurrency(axes);

  const PlaneChart chart = PlaneChart::on(plane, body.center());
  bool section_ok = true;
  try {
    const ConvexBody2 section = quadric_section(body, chart);
    r.plane_cuts_body = true;
    const Point2 centre = chart.to_plane(r.concurrency.best_point);
    r.section_symmetry_defect = central_symmetry_defect(section, centre);
    r.section_width_defect = width_defect(section);
    if (boundary_gap(section, centre) > 0.0) {
      for (int j = 0; j < 4; ++j) {
        const Line2 mirror = Line2::through_with_direction(centre, Dir2::from_angle(kPi * j / 4.0));
        const GarnachasReport g = equal_angle_defect(section, mirror);
        r.mirror_angle_defect = std::max(r.mirror_angle_defect, g.angle_defect);
        r.mirror_symmetry_defect = std::max(r.mirror_symmetry_defect, g.symmetry_defect);
      }
    } else {
      r.mirror_angle_defect = std::numeric_limits<double>::infinity();
      r.mirror_symmetry_defect = std::numeric_limits<double>::infinity();
    }
    section_ok = r.section_symmetry_defect < options.section_tol && r.section_width_defect < options.section_tol;
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::SectionEmpty) throw;
  }
  r.verdict = r.all_right_circular && r.concurrency.residual < options.residual_tol && section_ok;
  return r;
}

}  // namespace conelab
