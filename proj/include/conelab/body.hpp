#pragma once

#include <span>
#include <variant>
#include <vector>

#include "conelab/geom2d.hpp"

namespace conelab {

struct Disc {
  Point2 center;
  double radius = 0.0;
};

struct Ellipse {
  Point2 center;
  double semiaxis_a = 0.0;
  double semiaxis_b = 0.0;
  double rotation = 0.0;
};

// Support function sampled at N uniformly spaced angles 2*pi*i/N and
// interpolated by a periodic cubic spline.
class SupportTable {
 public:
  explicit SupportTable(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double step() const { return step_; }

  double value(double theta) const;
  double derivative(double theta) const;

 private:
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the nodes
  double step_ = 0.0;
};

enum class BodyKind { Disc, Ellipse, Generic };

// A planar, strictly convex body described by its support function
// h(theta) = max_{y in M} <u(theta), y>, u(theta) = (cos theta, sin theta).
// Values are immutable after construction.
class ConvexBody2 {
 public:
  static constexpr std::size_t kMinTableSize = 720;

  static ConvexBody2 disc(Point2 center, double radius);
  static ConvexBody2 ellipse(Point2 center, double semiaxis_a, double semiaxis_b, double rotation);
  // Throws InvalidBody when the table is too short, has non-positive width,
  // or fails the discrete sublinearity test.
  static ConvexBody2 generic(std::vector<double> support_table);

  BodyKind kind() const;
  const std::variant<Disc, Ellipse, SupportTable>& shape() const { return shape_; }

  double support(double theta) const;
  double support_derivative(double theta) const;
  Point2 support_point(double theta) const;

  // Resolution used for grid-based scans over theta.
  std::size_t grid_size() const;

  ConvexBody2 translated(Point2 v) const;
  ConvexBody2 rotated(double angle) const;  // about the origin
  ConvexBody2 reflected(const Line2& mirror) const;

 private:
  explicit ConvexBody2(std::variant<Disc, Ellipse, SupportTable> shape) : shape_(std::move(shape)) {}

  std::variant<Disc, Ellipse, SupportTable> shape_;
};

double support(const ConvexBody2& body, double theta);
Point2 support_point(const ConvexBody2& body, double theta);

struct SupportingLine {
  double theta = 0.0;     // outward normal angle; the body lies in <u(theta), y> <= h(theta)
  Line2 line;             // canonical form of the same line
  HalfPlane2 half_plane;  // the supporting half-plane containing the body
  Point2 touch;           // tangency point
  Dir2 travel;            // unit direction from the viewpoint toward the tangency point
};

struct TangentPair {
  SupportingLine first;   // smaller normal angle
  SupportingLine second;  // larger normal angle, within pi of the first
};

// Margin on min_theta (h(theta) - <u(theta), x>) below which x counts as
// exterior. Points within the margin are reported as tangent-degenerate.
inline constexpr double kExteriorMargin = 1e-9;

TangentPair tangent_lines(const ConvexBody2& body, Point2 x);

// The tangent from x whose travel direction d and inward normal v of its
// supporting half-plane satisfy det[d v] > 0. Following it from a point on an
// enclosing circle moves counterclockwise.
SupportingLine oriented_tangent(const ConvexBody2& body, Point2 x);
const SupportingLine& oriented_choice(const TangentPair& pair);

// min over theta of h(theta) - <u(theta), z>. Positive inside (it is then the
// distance to the boundary), negative outside.
double boundary_gap(const ConvexBody2& body, Point2 z);

double width(const ConvexBody2& body, double theta);
// max - min width over the body's grid.
double width_defect(const ConvexBody2& body);
bool constant_width(const ConvexBody2& body, double tol);

double central_symmetry_defect(const ConvexBody2& body, Point2 center);

struct ContainmentReport {
  bool inside_open_unit_disc = false;
  double margin = 0.0;
};

ContainmentReport containment_check(const ConvexBody2& body);
// Same test against an arbitrary circle: margin = R - max |b(theta) - c|.
ContainmentReport containment_check(const ConvexBody2& body, const Circle2& outer);

// Hausdorff distance of two convex bodies, max |h1 - h2| over a grid.
double hausdorff_distance(const ConvexBody2& a, const ConvexBody2& b, std::size_t samples = 4096);

}  // namespace conelab
