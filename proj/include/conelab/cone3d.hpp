#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "conelab/body.hpp"
#include "conelab/geom2d.hpp"

namespace conelab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Solid ellipsoid {y : (y - c)^T A (y - c) <= 1}.
class Quadric3 {
 public:
  Quadric3(Vec3 center, Mat3 form);

  static Quadric3 sphere(const Vec3& center, double radius);
  // Rows of `rotation` are the principal axis directions, paired with semiaxes.
  static Quadric3 from_axes(const Vec3& center, const Vec3& semiaxes, const Mat3& rotation = Mat3::Identity());

  const Vec3& center() const { return center_; }
  const Mat3& form() const { return form_; }
  double level(const Vec3& y) const { return (y - center_).dot(form_ * (y - center_)); }

 private:
  Vec3 center_;
  Mat3 form_;
};

// The plane {y : <normal, y> = offset}, normal of unit length.
struct Plane3 {
  Vec3 normal = Vec3::UnitZ();
  double offset = 0.0;

  Plane3() = default;
  Plane3(const Vec3& n, double s);
  static Plane3 through(const Vec3& point, const Vec3& normal);
  double signed_distance(const Vec3& y) const { return normal.dot(y) - offset; }
};

// Quadratic cone {y : (y - vertex)^T B (y - vertex) = 0}.
struct ConeQuadratic {
  Vec3 vertex;
  Mat3 form;
};

struct Line3 {
  Vec3 point;
  Vec3 direction;  // unit

  double distance(const Vec3& y) const;
};

// Eigen-decomposition of a cone form, split into the eigenvalue whose sign
// is in the minority and the two majority ones.
struct ConeSpectrum {
  double minority = 0.0;
  Vec3 minority_vector;
  double majority[2] = {0.0, 0.0};
  Vec3 majority_vectors[2];
  double spectral_radius = 0.0;

  // |majority[0] - majority[1]| / spectral_radius.
  double relative_gap() const;
};

ConeQuadratic tangent_cone(const Quadric3& body, const Vec3& x);

// Throws DegenerateSignature unless the form has one eigenvalue of minority
// sign and no eigenvalue near zero.
ConeSpectrum cone_spectrum(const ConeQuadratic& cone);

Line3 cone_axis(const ConeQuadratic& cone);
bool is_right_circular(const ConeQuadratic& cone, double tol);
double eigen_gap(const ConeQuadratic& cone);

double symmetric_section_defect(const ConeQuadratic& cone, const Plane3& plane, int samples = 360);

struct ConcurrencyReport {
  Vec3 best_point = Vec3::Zero();
  double residual = 0.0;
  double max_pairwise_gap = 0.0;
};

ConcurrencyReport axes_concurrency(std::span<const Line3> axes);

// Orthonormal frame on a plane; to_plane is an isometry onto R^2.
struct PlaneChart {
  Vec3 origin;
  Vec3 e1;
  Vec3 e2;

  static PlaneChart on(const Plane3& plane, const Vec3& origin);
  Point2 to_plane(const Vec3& y) const;
  Vec3 from_plane(Point2 z) const;
};

// Section of the quadric by the chart's plane as a planar ellipse in chart
// coordinates. Throws SectionEmpty if the plane misses the body.
ConvexBody2 quadric_section(const Quadric3& body, const PlaneChart& chart);

struct BabelSection {
  ConvexBody2 section;  // scaled so the sphere's trace is the unit circle
  Point2 p;
  std::vector<Point2> viewpoints;
  PlaneChart chart;
  double scale = 1.0;  // chart units per 2D unit
};

BabelSection babel_section_reduce(const Quadric3& body, const Vec3& p, const Plane3& plane,
                                  int num_viewpoints = 360);

// Deterministic, nearly uniform points on the unit sphere.
std::vector<Vec3> fibonacci_sphere(int count);

// Grid points of the plane around the body's projection, skipping those
// inside or near the body. Returns about `count` points.
std::vector<Vec3> plane_viewpoints(const Quadric3& body, const Plane3& plane, int count);

struct MariViewpoint {
  Vec3 point;
  Line3 axis;
  bool right_circular = false;
  double eigen_gap = 0.0;
};

struct MariOptions {
  double right_circular_tol = 1e-9;
  double residual_tol = 1e-8;
  double section_tol = 1e-8;
};

struct MariReport {
  std::vector<MariViewpoint> viewpoints;
  bool all_right_circular = false;
  double max_eigen_gap = 0.0;
  ConcurrencyReport concurrency;
  bool plane_cuts_body = false;
  double section_symmetry_defect = 0.0;
  double section_width_defect = 0.0;
  double mirror_angle_defect = 0.0;
  double mirror_symmetry_defect = 0.0;
  bool verdict = false;
};

MariReport mari_harness(const Quadric3& body, const Plane3& plane, int num_samples = 64,
                        const MariOptions& options = {});

}  // namespace conelab
