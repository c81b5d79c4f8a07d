#include "svg.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace conelab::cli {

namespace {

std::string id_attr(const std::string& id) { return id.empty() ? "" : fmt::format(" id=\"{}\"", id); }

std::string points_attr(const std::vector<Point2>& pts) {
  std::string out;
  for (const Point2& p : pts) {
    if (!out.empty()) out += ' ';
    out += fmt::format("{:.6f},{:.6f}", p.x, p.y);
  }
  return out;
}

}  // namespace

SvgScene::SvgScene(double extent, int pixels) : extent_(extent), pixels_(pixels) {}

void SvgScene::circle(const Circle2& c, const std::string& stroke, const std::string& id) {
  elements_.push_back(fmt::format(
      "<circle{} cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"{:.6f}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.004\"/>",
      id_attr(id), c.center.x, c.center.y, c.radius, stroke));
}

void SvgScene::body(const ConvexBody2& b, const std::string& stroke, const std::string& fill, const std::string& id) {
  std::vector<Point2> pts;
  const int n = 720;
  for (int i = 0; i < n; ++i) pts.push_back(b.support_point(kTwoPi * i / n));
  elements_.push_back(
      fmt::format("<polygon{} points=\"{}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"0.004\"/>", id_attr(id),
                  points_attr(pts), fill, stroke));
}

void SvgScene::polyline(const std::vector<Point2>& pts, const std::string& stroke, bool closed,
                        const std::string& id) {
  elements_.push_back(fmt::format("<{}{} points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"0.003\"/>",
                                  closed ? "polygon" : "polyline", id_attr(id), points_attr(pts), stroke));
}

void SvgScene::line(const Line2& l, const std::string& stroke, double width) {
  const Point2 f = l.foot();
  const Point2 d = l.direction().vec();
  const double reach = 2.0 * extent_ + norm(f);
  segment(f - reach * d, f + reach * d, stroke, width);
}

void SvgScene::segment(Point2 a, Point2 b, const std::string& stroke, double width) {
  elements_.push_back(fmt::format(
      "<line x1=\"{:.6f}\" y1=\"{:.6f}\" x2=\"{:.6f}\" y2=\"{:.6f}\" stroke=\"{}\" stroke-width=\"{}\"/>", a.x, a.y, b.x,
      b.y, stroke, width));
}

void SvgScene::dot(Point2 p, double radius, const std::string& fill, const std::string& id) {
  elements_.push_back(fmt::format("<circle{} cx=\"{:.6f}\" cy=\"{:.6f}\" r=\"{}\" fill=\"{}\"/>", id_attr(id), p.x,
                                  p.y, radius, fill));
}

std::string SvgScene::str() const {
  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"{1:.6f} {1:.6f} {2:.6f} "
      "{2:.6f}\">\n"
      "<rect x=\"{1:.6f}\" y=\"{1:.6f}\" width=\"{2:.6f}\" height=\"{2:.6f}\" fill=\"white\"/>\n"
      "<g transform=\"scale(1,-1)\">\n",
      pixels_, -extent_, 2.0 * extent_);
  for (const std::string& e : elements_) {
    out += e;
    out += '\n';
  }
  out += "</g>\n</svg>\n";
  return out;
}

void SvgScene::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << str();
}

}  // namespace conelab::cli
