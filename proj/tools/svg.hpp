#pragma once

#include <string>
#include <vector>

#include "conelab/body.hpp"
#include "conelab/geom2d.hpp"

namespace conelab::cli {

// Minimal SVG scene in math coordinates (y up). The viewport covers
// [-extent, extent]^2.
class SvgScene {
 public:
  explicit SvgScene(double extent = 1.1, int pixels = 800);

  void circle(const Circle2& c, const std::string& stroke, const std::string& id = "");
  void body(const ConvexBody2& b, const std::string& stroke, const std::string& fill, const std::string& id = "");
  void polyline(const std::vector<Point2>& pts, const std::string& stroke, bool closed, const std::string& id = "");
  // The part of the line inside the viewport.
  void line(const Line2& l, const std::string& stroke, double width = 0.002);
  void segment(Point2 a, Point2 b, const std::string& stroke, double width = 0.002);
  void dot(Point2 p, double radius, const std::string& fill, const std::string& id = "");

  std::string str() const;
  void save(const std::string& path) const;

 private:
  double extent_;
  int pixels_;
  std::vector<std::string> elements_;
};

}  // namespace conelab::cli
