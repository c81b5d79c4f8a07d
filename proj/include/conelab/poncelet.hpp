#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "conelab/body.hpp"
#include "conelab/geom2d.hpp"

namespace conelab {

enum class Closure { Closed, OpenDense, OpenConverging };

std::string_view to_string(Closure c);

// Poncelet polygon between an outer circle and an inner body. Vertex i is
// joined to vertex i+1 by chords[i]; when closed, the last chord returns to
// vertices[0].
struct PonceletState {
  Circle2 outer;
  std::vector<double> angles;  // vertex angles on the outer circle
  std::vector<Point2> vertices;
  std::vector<Line2> chords;
  std::vector<HalfPlane2> half_planes;  // supporting side of each chord
  std::vector<double> arcs;             // counterclockwise advance of each step
  Closure classification = Closure::OpenDense;
  int k = 0;                  // vertex count when closed
  int winding = 0;            // turns around the circle when closed
  double limit_angle = 0.0;   // OpenConverging only
  double closure_defect = 0.0;
  double total_turning = 0.0;
  bool steps_exhausted = false;
};

struct PonceletStep {
  Point2 next;
  double next_angle = 0.0;
  double arc = 0.0;  // in (0, 2pi)
  SupportingLine chord;
};

inline constexpr int kDefaultMaxSteps = 100000;
inline constexpr double kDefaultClosureTol = 1e-9;

PonceletStep poncelet_step(const Circle2& outer, const ConvexBody2& inner, Point2 x);

PonceletState poncelet_polygon(const Circle2& outer, const ConvexBody2& inner, Point2 x,
                               int max_steps = kDefaultMaxSteps,
                               double closure_tol = kDefaultClosureTol);

// Average fraction of a full turn per step over `steps` steps from x.
double rotation_number(const Circle2& outer, const ConvexBody2& inner, Point2 x, int steps);

struct PorismEntry {
  double start_angle = 0.0;
  Closure classification = Closure::OpenDense;
  int k = 0;
  int winding = 0;
  double defect = 0.0;
};

struct PorismReport {
  bool passed = false;
  int k = 0;
  int winding = 0;
  double max_defect = 0.0;
  std::vector<PorismEntry> entries;
};

PorismReport porism_check(const Circle2& outer, const ConvexBody2& inner, int k, int num_starts = 100,
                          double tol = kDefaultClosureTol, int max_steps = 1000);

struct FerResult {
  double radius = 0.0;
  double rotation_residual = 0.0;
  int bisection_steps = 0;
};

// Radius of the circle centered at `center` whose Poncelet polygons with the
// outer circle close after k steps with winding one.
FerResult fer_solve(const Circle2& outer, Point2 center, int k);

// Intersection of the supporting half-planes of one or several polygons,
// clipped to the outer disc, as a support-function table.
ConvexBody2 q_region(const PonceletState& state, const ConvexBody2& inner);
ConvexBody2 q_region(std::span<const PonceletState> states, const ConvexBody2& inner);

}  // namespace conelab
