#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "conelab/cone3d.hpp"
#include "conelab/harness2d.hpp"

using namespace conelab;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.kind();
  }
  FAIL("expected a GeometryError");
  return ErrorKind::Precondition;
}

// Discriminant of (w + t v)^T A (w + t v) = 1 for unit v, the quadric
// intersection oracle for tangency.
double line_discriminant(const Quadric3& q, const Vec3& x, const Vec3& v) {
  const Vec3 w = x - q.center();
  const double a = v.dot(q.form() * v);
  const double b = v.dot(q.form() * w);
  const double c = w.dot(q.form() * w) - 1.0;
  return b * b - a * c;
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return Vec3(n(rng), n(rng), n(rng)).normalized();
}

Mat3 rotation_about(const Vec3& axis, double angle) { return Eigen::AngleAxisd(angle, axis.normalized()).matrix(); }

}  // namespace

TEST_CASE("Quadric3 construction") {
  const Quadric3 s = Quadric3::sphere(Vec3(0.1, 0.0, 0.0), 0.5);
  CHECK(s.form().isApprox(4.0 * Mat3::Identity()));
  const Mat3 rot = rotation_about(Vec3(1, 2, 3), 0.7);
  const Quadric3 e = Quadric3::from_axes(Vec3::Zero(), Vec3(0.5, 0.4, 0.3), rot);
  // The first row of the rotation is the 0.5 semiaxis direction.
  CHECK(e.level(0.5 * rot.row(0).transpose()) == doctest::Approx(1.0));
  CHECK(e.level(0.3 * rot.row(2).transpose()) == doctest::Approx(1.0));
  CHECK(kind_of([] { Quadric3(Vec3::Zero(), Mat3::Identity() * -1.0); }) == ErrorKind::InvalidBody);
  Mat3 skew = Mat3::Identity();
  skew(0, 1) = 0.1;
  CHECK(kind_of([&] { Quadric3(Vec3::Zero(), skew); }) == ErrorKind::InvalidBody);
}

TEST_CASE("tangent_cone of a sphere") {
  const Quadric3 s = Quadric3::sphere(Vec3::Zero(), 0.5);
  const ConeQuadratic c = tangent_cone(s, Vec3(1.0, 0.0, 0.0));
  Mat3 expected = 12.0 * Mat3::Identity();
  expected(0, 0) -= 16.0;
  CHECK((c.form - expected).cwiseAbs().maxCoeff() < 1e-12);
  const ConeSpectrum spec = cone_spectrum(c);
  CHECK(spec.minority == doctest::Approx(-4.0));
  CHECK(spec.majority[0] == doctest::Approx(12.0));
  CHECK(spec.majority[1] == doctest::Approx(12.0));

  const Line3 axis = cone_axis(c);
  CHECK((axis.direction - Vec3::UnitX()).norm() < 1e-12);
  CHECK(axis.distance(Vec3::Zero()) < 1e-12);

  CHECK(kind_of([&] { tangent_cone(s, Vec3(0.5, 0.0, 0.0)); }) == ErrorKind::InteriorPoint);
  CHECK(kind_of([&] { tangent_cone(s, Vec3(0.1, 0.0, 0.0)); }) == ErrorKind::InteriorPoint);
  CHECK(kind_of([] { cone_spectrum({Vec3::Zero(), Mat3::Identity()}); }) == ErrorKind::DegenerateSignature);
}

TEST_CASE("property: cone generators are tangent lines") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Quadric3 q = Quadric3::from_axes(Vec3(0.05, -0.1, 0.02), Vec3(0.45, 0.35, 0.25),
                                         rotation_about(Vec3(0.3, -1, 0.5), 1.1));
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 x = (0.8 + 0.5 * u(rng)) * random_unit(rng);
    const ConeQuadratic cone = tangent_cone(q, x);
    const ConeSpectrum s = cone_spectrum(cone);
    // Solve v^T B v = 0 in the eigenbasis: v = e_m + a e_1 + b e_2.
    const double phi = kTwoPi * u(rng);
    const Vec3 v = (s.minority_vector + std::cos(phi) * std::sqrt(-s.minority / s.majority[0]) * s.majority_vectors[0] +
                    std::sin(phi) * std::sqrt(-s.minority / s.majority[1]) * s.majority_vectors[1])
                       .normalized();
    REQUIRE(std::abs(v.dot(cone.form * v)) < 1e-9 * s.spectral_radius);
    REQUIRE(std::abs(line_discriminant(q, x, v)) < 1e-9);
  }
}

TEST_CASE("cone_axis passes through a sphere's center") {
  std::mt19937_64 rng(5);
  const Vec3 m(0.1, -0.2, 0.15);
  const Quadric3 s = Quadric3::sphere(m, 0.3);
  for (int i = 0; i < 50; ++i) {
    const Line3 axis = cone_axis(tangent_cone(s, random_unit(rng)));
    CHECK(axis.distance(m) < 1e-9);
    // Canonical orientation: first clearly nonzero component positive.
    const int first = std::abs(axis.direction.x()) > 1e-12 ? 0 : (std::abs(axis.direction.y()) > 1e-12 ? 1 : 2);
    CHECK(axis.direction[first] > 0.0);
  }
}

TEST_CASE("is_right_circular") {
  const Quadric3 sphere = Quadric3::sphere(Vec3(0.1, 0.1, 0.0), 0.3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) CHECK(is_right_circular(tangent_cone(sphere, random_unit(rng)), 1e-9));

  const Quadric3 spheroid = Quadric3::from_axes(Vec3::Zero(), Vec3(0.5, 0.3, 0.3));
  CHECK(is_right_circular(tangent_cone(spheroid, Vec3(0.9, 0.0, 0.0)), 1e-9));

  const Quadric3 triaxial = Quadric3::from_axes(Vec3::Zero(), Vec3(0.5, 0.4, 0.3));
  const ConeQuadratic c = tangent_cone(triaxial, Vec3(0.6, 0.5, 0.4).normalized());
  CHECK_FALSE(is_right_circular(c, 1e-6));
  CHECK(eigen_gap(c) > 1e-3);
}

TEST_CASE("symmetric_section_defect") {
  const Quadric3 triaxial = Quadric3::from_axes(Vec3(0.05, 0.0, -0.05), Vec3(0.45, 0.35, 0.25),
                                                rotation_about(Vec3(1, 1, 0), 0.4));
  const ConeQuadratic cone = tangent_cone(triaxial, Vec3(0.3, -0.7, 0.6).normalized());
  const Line3 axis = cone_axis(cone);
  // The axis direction may point away from the body; sections on either nappe work.
  const Plane3 near_plane = Plane3::through(cone.vertex + 0.5 * axis.direction, axis.direction);
  const Plane3 far_plane = Plane3::through(cone.vertex - 1.5 * axis.direction, axis.direction);
  const double d1 = symmetric_section_defect(cone, near_plane);
  const double d2 = symmetric_section_defect(cone, far_plane);
  CHECK(d1 < 1e-9);
  CHECK(d2 < 1e-9);

  // A tilted plane makes the axis point off-center on a non-circular cone.
  const Vec3 tilt = (axis.direction + 0.3 * axis.direction.unitOrthogonal()).normalized();
  CHECK(symmetric_section_defect(cone, Plane3::through(cone.vertex + 0.5 * axis.direction, tilt)) > 1e-6);

  // Plane containing the axis: parallel to it, unbounded.
  const Plane3 along = Plane3::through(cone.vertex, axis.direction.unitOrthogonal());
  CHECK(kind_of([&] { symmetric_section_defect(cone, along); }) == ErrorKind::UnboundedSection);

  // Plane parallel to a generator gives a parabola.
  const ConeSpectrum s = cone_spectrum(cone);
  const Vec3 gen = (s.minority_vector + std::sqrt(-s.minority / s.majority[0]) * s.majority_vectors[0]).normalized();
  const Vec3 normal = gen.cross(s.majority_vectors[1]).normalized();
  CHECK(kind_of([&] { symmetric_section_defect(cone, Plane3::through(cone.vertex + 0.3 * s.minority_vector, normal)); }) ==
        ErrorKind::UnboundedSection);
}

TEST_CASE("property: perpendicular sections of tangent cones are centrally symmetric") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Quadric3 q = Quadric3::from_axes(Vec3(0.1 * u(rng), 0.1 * u(rng), 0.1 * u(rng)),
                                           Vec3(0.2 + 0.3 * u(rng), 0.2 + 0.2 * u(rng), 0.1 + 0.2 * u(rng)),
                                           rotation_about(random_unit(rng), kTwoPi * u(rng)));
    const ConeQuadratic cone = tangent_cone(q, random_unit(rng));
    const Line3 axis = cone_axis(cone);
    REQUIRE(symmetric_section_defect(cone, Plane3::through(cone.vertex + 0.7 * axis.direction, axis.direction)) <
            1e-9);
  }
}

TEST_CASE("axes_concurrency") {
  SUBCASE("hand-built concurrent lines") {
    const Vec3 p(0.1, 0.2, -0.1);
    const std::vector<Line3> lines = {{p + Vec3(1, 0, 0), Vec3::UnitX()},
                                      {p - Vec3(0, 2, 0), Vec3::UnitY()},
                                      {p + Vec3(0.3, 0.3, 0.3), Vec3(1, 1, 1).normalized()}};
    const ConcurrencyReport r = axes_concurrency(lines);
    CHECK((r.best_point - p).norm() < 1e-12);
    CHECK(r.residual < 1e-12);
    CHECK(r.max_pairwise_gap < 1e-12);
  }
  SUBCASE("sphere axes meet at the center") {
    const Vec3 m(-0.2, 0.1, 0.3);
    const Quadric3 s = Quadric3::sphere(m, 0.3);
    std::vector<Line3> axes;
    for (const Vec3& x : fibonacci_sphere(50)) axes.push_back(cone_axis(tangent_cone(s, x)));
    const ConcurrencyReport r = axes_concurrency(axes);
    CHECK((r.best_point - m).norm() < 1e-8);
    CHECK(r.residual < 1e-9);
  }
  SUBCASE("triaxial ellipsoid axes do not meet") {
    const Quadric3 t = Quadric3::from_axes(Vec3::Zero(), Vec3(0.45, 0.35, 0.25));
    std::vector<Line3> axes;
    for (const Vec3& x : fibonacci_sphere(50)) axes.push_back(cone_axis(tangent_cone(t, x)));
    const ConcurrencyReport r = axes_concurrency(axes);
    // Frozen regression value, reproduced by an independent numpy computation.
    CHECK(r.residual == doctest::Approx(0.0442783217).epsilon(1e-6));
    CHECK(r.residual > 1e-3);
  }
  SUBCASE("errors") {
    const std::vector<Line3> parallel = {{Vec3::Zero(), Vec3::UnitZ()}, {Vec3::UnitX(), Vec3::UnitZ()},
                                         {Vec3::UnitY(), Vec3::UnitZ()}};
    CHECK(kind_of([&] { axes_concurrency(parallel); }) == ErrorKind::RankDeficient);
    const std::vector<Line3> two = {{Vec3::Zero(), Vec3::UnitZ()}, {Vec3::UnitX(), Vec3::UnitY()}};
    CHECK(kind_of([&] { axes_concurrency(two); }) == ErrorKind::Precondition);
  }
}

TEST_CASE("babel_section_reduce") {
  SUBCASE("sphere sections are discs centered at p") {
    const Vec3 m(0.1, -0.15, 0.2);
    const Quadric3 s = Quadric3::sphere(m, 0.3);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
      const BabelSection sec = babel_section_reduce(s, m, Plane3::through(m, random_unit(rng)));
      const auto& e = std::get<Ellipse>(sec.section.shape());
      CHECK(std::abs(e.semiaxis_a - e.semiaxis_b) < 1e-12);
      CHECK(distance(e.center, sec.p) < 1e-12);
      CHECK(sec.viewpoints.size() == 360);
      CHECK(blanco_defect(sec.section, sec.p).defect < 1e-9);
    }
  }
  SUBCASE("triaxial section through the center is a non-circular ellipse") {
    const Quadric3 t = Quadric3::from_axes(Vec3::Zero(), Vec3(0.45, 0.35, 0.25));
    const Plane3 plane = Plane3::through(Vec3::Zero(), Vec3(0.3, 0.5, 0.8));
    const BabelSection sec = babel_section_reduce(t, Vec3::Zero(), plane);
    const auto& e = std::get<Ellipse>(sec.section.shape());
    CHECK(std::abs(e.semiaxis_a - e.semiaxis_b) > 0.01);
    CHECK(blanco_defect(sec.section, sec.p).defect > 1e-3);
    // Every boundary point of the 2D section maps back onto the quadric surface.
    for (int i = 0; i < 36; ++i) {
      const Point2 b = sec.section.support_point(kTwoPi * i / 36.0);
      const Vec3 y = sec.chart.from_plane(sec.scale * b);
      CHECK(std::abs(t.level(y) - 1.0) < 1e-10);
      CHECK(std::abs(plane.signed_distance(y)) < 1e-12);
    }
  }
  SUBCASE("chart is an isometry") {
    std::mt19937_64 rng(2);
    const PlaneChart chart = PlaneChart::on(Plane3(Vec3(1, -2, 0.5), 0.3), Vec3::Zero());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const Vec3 a = chart.from_plane({u(rng), u(rng)});
      const Vec3 b = chart.from_plane({u(rng), u(rng)});
      CHECK(std::abs(distance(chart.to_plane(a), chart.to_plane(b)) - (a - b).norm()) < 1e-12);
    }
  }
  SUBCASE("errors") {
    const Quadric3 s = Quadric3::sphere(Vec3::Zero(), 0.3);
    CHECK(kind_of([&] { babel_section_reduce(s, Vec3(0.5, 0, 0), Plane3::through(Vec3(0.5, 0, 0), Vec3::UnitX())); }) ==
          ErrorKind::Precondition);
    CHECK(kind_of([&] { babel_section_reduce(s, Vec3::Zero(), Plane3(Vec3::UnitZ(), 0.1)); }) ==
          ErrorKind::Precondition);
    const Quadric3 big = Quadric3::sphere(Vec3::Zero(), 1.5);
    CHECK(kind_of([&] { babel_section_reduce(big, Vec3(0, 0, 1.2), Plane3(Vec3::UnitZ(), 1.2)); }) ==
          ErrorKind::PlaneMissesSphere);
    CHECK(kind_of([&] { quadric_section(s, PlaneChart::on(Plane3(Vec3::UnitZ(), 0.5), Vec3::Zero())); }) ==
          ErrorKind::SectionEmpty);
  }
}

TEST_CASE("mari_harness") {
  SUBCASE("sphere with an offset center") {
    const Quadric3 s = Quadric3::sphere(Vec3(0.0, 0.0, 0.1), 0.3);
    const MariReport r = mari_harness(s, Plane3(Vec3::UnitZ(), 0.0));
    CHECK(r.viewpoints.size() > 20);
    CHECK(r.all_right_circular);
    CHECK(r.concurrency.residual < 1e-8);
    CHECK((r.concurrency.best_point - Vec3(0, 0, 0.1)).norm() < 1e-7);
    CHECK(r.plane_cuts_body);
    CHECK(r.section_symmetry_defect < 1e-8);
    CHECK(r.section_width_defect < 1e-8);
    CHECK(r.mirror_angle_defect < 1e-8);
    CHECK(r.mirror_symmetry_defect < 1e-8);
    CHECK(r.verdict);
  }
  SUBCASE("sphere not cut by the plane") {
    const MariReport r = mari_harness(Quadric3::sphere(Vec3(0.0, 0.0, 0.5), 0.3), Plane3(Vec3::UnitZ(), 0.0));
    CHECK_FALSE(r.plane_cuts_body);
    CHECK(r.verdict);
  }
  SUBCASE("prolate spheroid seen from its equatorial plane") {
    const Quadric3 sp = Quadric3::from_axes(Vec3::Zero(), Vec3(0.3, 0.3, 0.5));
    const MariReport r = mari_harness(sp, Plane3(Vec3::UnitZ(), 0.0));
    CHECK_FALSE(r.all_right_circular);
    CHECK(r.max_eigen_gap > 1e-4);
    CHECK_FALSE(r.verdict);
  }
}
