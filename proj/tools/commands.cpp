#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "conelab/cone3d.hpp"
#include "conelab/harness2d.hpp"
#include "conelab/poncelet.hpp"
#include "io.hpp"
#include "svg.hpp"

namespace conelab::cli {

using nlohmann::json;

namespace {

const Circle2 kUnitCircle({0.0, 0.0}, 1.0);

// Longest polygon drawn in scene.svg; open orbits can run 1e5 steps.
constexpr std::size_t kMaxDrawnVertices = 2001;

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

Plane3 parse_plane(const std::string& text) {
  const auto v = parse_numbers(text, 4, "--plane");
  require(std::hypot(v[0], v[1], v[2]) > 0.0, "--plane normal must be nonzero");
  return Plane3(Vec3(v[0], v[1], v[2]), v[3]);
}

std::vector<Vec3> viewpoints_for(const ConeOptions& opt, const Quadric3& q) {
  require(opt.count >= 3, "--count must be at least 3");
  if (opt.viewpoints == "sphere") return fibonacci_sphere(opt.count);
  if (opt.viewpoints == "plane") return plane_viewpoints(q, parse_plane(opt.plane), opt.count);
  throw ConfigError("--viewpoints must be 'sphere' or 'plane'");
}

json concurrency_json(const ConcurrencyReport& r) {
  return {{"best_point", to_json(r.best_point)}, {"residual", r.residual}, {"max_pairwise_gap", r.max_pairwise_gap}};
}

CsvWriter axes_header() {
  return CsvWriter({"viewpoint", "vx", "vy", "vz", "px", "py", "pz", "dx", "dy", "dz", "right_circular", "eigen_gap"});
}

void axes_row(CsvWriter& csv, long long index, const Vec3& x, const Line3& axis, bool circular, double gap) {
  csv.row({index, x.x(), x.y(), x.z(), axis.point.x(), axis.point.y(), axis.point.z(), axis.direction.x(),
           axis.direction.y(), axis.direction.z(), static_cast<long long>(circular), gap});
}

json blanco_json(const BlancoReport& r, Point2 p, double tol) {
  return {{"p", to_json(p)},
          {"defect", r.defect},
          {"samples", r.samples},
          {"sigma_radius_spread", r.sigma_radius_spread},
          {"mean_sigma_radius", r.mean_sigma_radius},
          {"hausdorff_to_best_circle", r.hausdorff_to_best_circle},
          {"tol", tol},
          {"verdict", blanco_conclusion_check(r, tol)}};
}

CsvWriter blanco_csv(const BlancoReport& r) {
  CsvWriter csv({"angle", "bisector_distance", "sigma_radius"});
  for (const BlancoSample& s : r.per_sample) csv.row({s.angle, s.bisector_distance, s.sigma_radius});
  return csv;
}

SvgScene blanco_svg(const ConvexBody2& body, Point2 p, int samples) {
  SvgScene scene;
  scene.circle(kUnitCircle, "black", "outer");
  scene.body(body, "steelblue", "lightsteelblue", "body");
  const int stride = std::max(1, samples / 24);
  for (int i = 0; i < samples; i += stride) {
    const Point2 x = unit(kTwoPi * i / samples);
    const TangentPair t = tangent_lines(body, x);
    for (const SupportingLine* s : {&t.first, &t.second}) scene.segment(x, x + 1.4 * (s->touch - x), "darkorange");
    scene.line(bisector_line(body, x), "seagreen", 0.0015);
    scene.dot(x, 0.012, "darkorange");
  }
  scene.dot(p, 0.015, "crimson", "p");
  return scene;
}

}  // namespace

int run_poncelet(const PonceletOptions& opt, const OutputOptions& out) {
  require(!opt.body.empty(), "--body is required");
  require(opt.max_steps >= 1, "--max-steps must be positive");
  require(opt.tol > 0.0, "--tol must be positive");
  const Formats formats(out.formats);
  const ConvexBody2 body = load_body(opt.body);
  const auto dir = prepare_out_dir(out.out);

  const PonceletState st = poncelet_polygon(kUnitCircle, body, unit(opt.start), opt.max_steps, opt.tol);
  const double rotation = st.total_turning / (kTwoPi * static_cast<double>(st.arcs.size()));

  if (formats.csv()) {
    CsvWriter csv({"step", "angle", "x", "y", "closure_defect"});
    for (std::size_t i = 0; i < st.vertices.size(); ++i) {
      csv.row({static_cast<long long>(i), st.angles[i], st.vertices[i].x, st.vertices[i].y,
               arc_distance(st.angles[i], st.angles[0])});
    }
    write_text(dir / "vertices.csv", csv.str());
  }
  if (formats.json()) {
    json summary = {{"classification", to_string(st.classification)},
                    {"k", st.k},
                    {"winding", st.winding},
                    {"rotation_number", rotation},
                    {"closure_defect", st.closure_defect},
                    {"steps", st.arcs.size()},
                    {"steps_exhausted", st.steps_exhausted},
                    {"start", opt.start},
                    {"body", body_to_json(body)}};
    if (st.classification == Closure::OpenConverging) summary["limit_angle"] = st.limit_angle;
    write_json(dir / "summary.json", summary);
  }
  if (formats.svg()) {
    SvgScene scene;
    scene.circle(kUnitCircle, "black", "outer");
    scene.body(body, "steelblue", "lightsteelblue", "inner");
    const bool closed = st.classification == Closure::Closed;
    const std::size_t n = std::min(st.vertices.size(), kMaxDrawnVertices);
    scene.polyline({st.vertices.begin(), st.vertices.begin() + static_cast<std::ptrdiff_t>(n)}, "crimson", closed,
                   "polygon");
    scene.dot(st.vertices.front(), 0.015, "black", "start");
    scene.save((dir / "scene.svg").string());
  }
  fmt::print("classification {}\nk {}\nwinding {}\nrotation_number {:.17g}\n", to_string(st.classification), st.k,
             st.winding, rotation);
  return 0;
}

int run_fer(const FerOptions& opt, const OutputOptions& out) {
  require(opt.k >= 3, "--k must be at least 3");
  require(opt.starts >= 1, "--starts must be positive");
  require(opt.tol > 0.0, "--tol must be positive");
  const Formats formats(out.formats);
  const auto dir = prepare_out_dir(out.out);

  const FerResult r = fer_solve(kUnitCircle, {opt.t, 0.0}, opt.k);
  fmt::print("radius {:.17g}\nresidual {:.17g}\n", r.radius, r.rotation_residual);

  const PorismReport porism =
      porism_check(kUnitCircle, ConvexBody2::disc({opt.t, 0.0}, r.radius), opt.k, opt.starts, opt.tol);
  if (formats.csv()) {
    CsvWriter csv({"start", "start_angle", "classification", "k", "winding", "closure_defect"});
    for (std::size_t i = 0; i < porism.entries.size(); ++i) {
      const PorismEntry& e = porism.entries[i];
      csv.row({static_cast<long long>(i), e.start_angle, std::string(to_string(e.classification)),
               static_cast<long long>(e.k), static_cast<long long>(e.winding), e.defect});
    }
    write_text(dir / "closure.csv", csv.str());
  }
  if (formats.json()) {
    write_json(dir / "fer.json", {{"t", opt.t},
                                  {"k", opt.k},
                                  {"radius", r.radius},
                                  {"rotation_residual", r.rotation_residual},
                                  {"bisection_steps", r.bisection_steps},
                                  {"porism_passed", porism.passed},
                                  {"max_closure_defect", porism.max_defect}});
  }
  return 0;
}

int run_blanco(const BlancoOptions& opt, const OutputOptions& out) {
  require(!opt.body.empty(), "--body is required");
  require(opt.samples >= 1, "--samples must be positive");
  require(opt.tol > 0.0, "--tol must be positive");
  const Formats formats(out.formats);
  const ConvexBody2 body = load_body(opt.body);
  const auto pv = parse_numbers(opt.p, 2, "--p");
  const Point2 p{pv[0], pv[1]};
  const auto dir = prepare_out_dir(out.out);

  const BlancoReport r = blanco_defect(body, p, opt.samples);
  const json report = blanco_json(r, p, opt.tol);
  if (formats.json()) write_json(dir / "blanco.json", report);
  if (formats.csv()) write_text(dir / "samples.csv", blanco_csv(r).str());
  if (formats.svg()) blanco_svg(body, p, opt.samples).save((dir / "blanco.svg").string());
  fmt::print("defect {:.17g}\nverdict {}\n", r.defect, report["verdict"].get<bool>());
  return 0;
}

int run_cone_axis(const ConeOptions& opt, const OutputOptions& out, bool with_concurrency) {
  require(!opt.quadric.empty(), "--quadric is required");
  require(opt.tol > 0.0, "--tol must be positive");
  const Formats formats(out.formats);
  const Quadric3 q = load_quadric(opt.quadric);
  const std::vector<Vec3> views = viewpoints_for(opt, q);
  const auto dir = prepare_out_dir(out.out);

  CsvWriter csv = axes_header();
  std::vector<Line3> axes;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const ConeQuadratic cone = tangent_cone(q, views[i]);
    axes.push_back(cone_axis(cone));
    axes_row(csv, static_cast<long long>(i), views[i], axes.back(), is_right_circular(cone, opt.tol), eigen_gap(cone));
  }
  if (formats.csv()) write_text(dir / "axes.csv", csv.str());
  if (with_concurrency) {
    const ConcurrencyReport r = axes_concurrency(axes);
    if (formats.json()) write_json(dir / "concurrency.json", concurrency_json(r));
    fmt::print("residual {:.17g}\nbest_point {:.17g} {:.17g} {:.17g}\n", r.residual, r.best_point.x(),
               r.best_point.y(), r.best_point.z());
  }
  return 0;
}

int run_cone_babel(const ConeOptions& opt, const OutputOptions& out) {
  require(!opt.quadric.empty(), "--quadric is required");
  require(opt.sections >= 1, "--sections must be positive");
  require(opt.samples >= 1, "--samples must be positive");
  require(opt.tol > 0.0, "--tol must be positive");
  const Formats formats(out.formats);
  const Quadric3 q = load_quadric(opt.quadric);
  Vec3 p = q.center();
  if (!opt.p.empty()) {
    const auto v = parse_numbers(opt.p, 3, "--p");
    p = Vec3(v[0], v[1], v[2]);
  }
  const auto dir = prepare_out_dir(out.out);

  std::vector<Vec3> normals;
  if (opt.seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(*opt.seed));
    std::normal_distribution<double> g(0.0, 1.0);
    while (normals.size() < static_cast<std::size_t>(opt.sections)) {
      const Vec3 v(g(rng), g(rng), g(rng));
      if (v.norm() > 1e-6) normals.push_back(v.normalized());
    }
  } else {
    normals = fibonacci_sphere(opt.sections);
  }

  CsvWriter summary({"section", "nx", "ny", "nz", "offset", "defect", "verdict"});
  int passed = 0;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    const Plane3 plane = Plane3::through(p, normals[i]);
    const BabelSection sec = babel_section_reduce(q, p, plane, opt.samples);
    const BlancoReport r = blanco_defect(sec.section, sec.p, opt.samples);
    json report = blanco_json(r, sec.p, opt.tol);
    report["plane"] = {{"normal", to_json(plane.normal)}, {"offset", plane.offset}};
    report["section"] = body_to_json(sec.section);
    report["scale"] = sec.scale;
    const bool verdict = report["verdict"].get<bool>();
    passed += verdict;
    summary.row({static_cast<long long>(i), plane.normal.x(), plane.normal.y(), plane.normal.z(), plane.offset,
                 r.defect, static_cast<long long>(verdict)});
    const std::string stem = fmt::format("babel_{:03d}", i);
    if (formats.json()) write_json(dir / (stem + ".json"), report);
    if (formats.csv()) write_text(dir / (stem + ".csv"), blanco_csv(r).str());
    if (formats.svg()) blanco_svg(sec.section, sec.p, opt.samples).save((dir / (stem + ".svg")).string());
  }
  if (formats.csv()) write_text(dir / "babel.csv", summary.str());
  fmt::print("sections {}\npassed {}\n", normals.size(), passed);
  return 0;
}

int run_cone_mari(const ConeOptions& opt, const OutputOptions& out) {
  require(!opt.quadric.empty(), "--quadric is required");
  require(opt.tol > 0.0, "--tol must be positive");
  require(opt.samples >= 4, "--samples must be at least 4");
  const Formats formats(out.formats);
  const Quadric3 q = load_quadric(opt.quadric);
  const Plane3 plane = parse_plane(opt.plane);
  const auto dir = prepare_out_dir(out.out);

  MariOptions mo;
  mo.right_circular_tol = opt.tol;
  const MariReport r = mari_harness(q, plane, opt.samples, mo);

  if (formats.csv()) {
    CsvWriter csv = axes_header();
    for (std::size_t i = 0; i < r.viewpoints.size(); ++i) {
      const MariViewpoint& v = r.viewpoints[i];
      axes_row(csv, static_cast<long long>(i), v.point, v.axis, v.right_circular, v.eigen_gap);
    }
    write_text(dir / "axes.csv", csv.str());
  }
  if (formats.json()) {
    write_json(dir / "concurrency.json", concurrency_json(r.concurrency));
    write_json(dir / "mari.json", {{"viewpoints", r.viewpoints.size()},
                                   {"all_right_circular", r.all_right_circular},
                                   {"max_eigen_gap", r.max_eigen_gap},
                                   {"concurrency", concurrency_json(r.concurrency)},
                                   {"plane_cuts_body", r.plane_cuts_body},
                                   {"section_symmetry_defect", r.section_symmetry_defect},
                                   {"section_width_defect", r.section_width_defect},
                                   {"equal_angle_defect", r.mirror_angle_defect},
                                   {"mirror_symmetry_defect", r.mirror_symmetry_defect},
                                   {"verdict", r.verdict}});
  }
  fmt::print("verdict {}\nresidual {:.17g}\nmax_eigen_gap {:.17g}\n", r.verdict, r.concurrency.residual,
             r.max_eigen_gap);
  return 0;
}

int run_cone_gruber(const ConeOptions& opt, const OutputOptions& out) {
  require(opt.steps >= 2, "--steps must be at least 2");
  require(opt.count >= 3, "--count must be at least 3");
  const Formats formats(out.formats);
  const auto dir = prepare_out_dir(out.out);

  // Ellipsoids (a, (a+c)/2, c) with c = a sqrt(1 - e^2), e swept over [0, 0.9].
  const double a = 0.4;
  const std::vector<Vec3> views = fibonacci_sphere(opt.count);
  CsvWriter csv({"eccentricity", "a", "b", "c", "residual", "max_pairwise_gap", "max_eigen_gap"});
  for (int i = 0; i < opt.steps; ++i) {
    const double e = 0.9 * i / (opt.steps - 1);
    const double c = a * std::sqrt(1.0 - e * e);
    const double b = 0.5 * (a + c);
    const Quadric3 q = Quadric3::from_axes(Vec3::Zero(), Vec3(a, b, c));
    std::vector<Line3> axes;
    double max_gap = 0.0;
    for (const Vec3& x : views) {
      const ConeQuadratic cone = tangent_cone(q, x);
      axes.push_back(cone_axis(cone));
      max_gap = std::max(max_gap, eigen_gap(cone));
    }
    const ConcurrencyReport r = axes_concurrency(axes);
    csv.row({e, a, b, c, r.residual, r.max_pairwise_gap, max_gap});
  }
  if (formats.csv()) write_text(dir / "gruber.csv", csv.str());
  return 0;
}

}  // namespace conelab::cli
