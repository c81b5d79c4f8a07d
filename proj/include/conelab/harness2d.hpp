#pragma once

#include <vector>

#include "conelab/body.hpp"
#include "conelab/geom2d.hpp"

namespace conelab {

// The bisector, through x on the unit circle, of the two supporting lines of
// the body from x; of the two bisectors, the one whose sector holds the body.
Line2 bisector_line(const ConvexBody2& body, Point2 x);

struct BlancoSample {
  double angle = 0.0;
  double bisector_distance = 0.0;  // distance from p to the bisector at this viewpoint
  double sigma_radius = 0.0;       // distance from p to the first (oriented) tangent
};

struct BlancoReport {
  double defect = 0.0;
  int samples = 0;
  double sigma_radius_spread = 0.0;
  double mean_sigma_radius = 0.0;
  double hausdorff_to_best_circle = 0.0;
  std::vector<BlancoSample> per_sample;
};

inline constexpr int kDefaultBlancoSamples = 360;

BlancoReport blanco_defect(const ConvexBody2& body, Point2 p, int num_samples = kDefaultBlancoSamples);

// True when every bisector passes through p and the body is the circle
// centered at p, both within tol.
bool blanco_conclusion_check(const ConvexBody2& body, Point2 p, double tol,
                             int num_samples = kDefaultBlancoSamples);
bool blanco_conclusion_check(const BlancoReport& report, double tol);

struct GarnachasReport {
  double angle_defect = 0.0;
  double symmetry_defect = 0.0;
};

inline constexpr int kDefaultGarnachasSamples = 64;

// Viewpoints z are taken on the mirror line outside the body, num_samples on
// each of the two rays.
GarnachasReport equal_angle_defect(const ConvexBody2& body, const Line2& mirror,
                                   int num_samples = kDefaultGarnachasSamples);

}  // namespace conelab
