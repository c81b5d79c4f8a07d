// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// CONELAB_CLI and ACCEPTANCE_WORKDIR come from the build.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "conelab/cone3d.hpp"
#include "conelab/harness2d.hpp"
#include "conelab/poncelet.hpp"
#include "mirror_corpus.hpp"
#include "oracles.hpp"

using namespace conelab;
namespace fs = std::filesystem;

namespace {

const Circle2 kUnit({0.0, 0.0}, 1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

// Every start yields the same (k, winding) and the worst defect stays small.
Outcome porism_uniform(const ConvexBody2& inner, int k, double max_defect, int expected_winding = 0) {
  const PorismReport r = porism_check(kUnit, inner, k, 100);
  bool same = r.entries.size() == 100;
  for (const PorismEntry& e : r.entries) {
    same = same && e.classification == Closure::Closed && e.k == r.entries.front().k &&
           e.winding == r.entries.front().winding;
  }
  const bool winding_ok = expected_winding == 0 || r.winding == expected_winding;
  return {r.passed && same && winding_ok && r.max_defect < max_defect,
          fmt::format("k={} winding={} max_defect={:.3g}", r.k, r.winding, r.max_defect)};
}

Outcome concentric_radii() {
  double worst = 0.0;
  for (int k = 3; k <= 12; ++k) worst = std::max(worst, std::abs(fer_solve(kUnit, {0.0, 0.0}, k).radius - std::cos(kPi / k)));
  return {worst < 1e-9, fmt::format("max |rho - cos(pi/k)| = {:.3g}", worst)};
}

Outcome euler_triangle() {
  const double rho = fer_solve(kUnit, {0.2, 0.0}, 3).radius;
  const Outcome porism = porism_uniform(ConvexBody2::disc({0.2, 0.0}, rho), 3, 1e-7, 1);
  return {std::abs(rho - 0.48) < 1e-8 && porism.pass, fmt::format("rho={:.12f} {}", rho, porism.detail)};
}

Outcome fuss_quadrilateral() {
  const double rho = fer_solve(kUnit, {0.2, 0.0}, 4).radius;
  const double expected = oracle::fuss_quadrilateral_inradius(1.0, 0.2);
  return {std::abs(rho - expected) < 1e-8, fmt::format("rho={:.12f} oracle={:.12f}", rho, expected)};
}

Outcome porism_invariance() {
  std::vector<std::pair<ConvexBody2, int>> pairs;
  for (int k = 3; k <= 12; ++k) pairs.emplace_back(ConvexBody2::disc({0.0, 0.0}, fer_solve(kUnit, {0.0, 0.0}, k).radius), k);
  pairs.emplace_back(ConvexBody2::disc({0.2, 0.0}, fer_solve(kUnit, {0.2, 0.0}, 3).radius), 3);
  pairs.emplace_back(ConvexBody2::disc({0.2, 0.0}, fer_solve(kUnit, {0.2, 0.0}, 4).radius), 4);
  int ok = 0;
  std::string first_failure;
  for (const auto& [body, k] : pairs) {
    const Outcome o = porism_uniform(body, k, 1e-7);
    ok += o.pass;
    if (!o.pass && first_failure.empty()) first_failure = fmt::format(" first failure k={}: {}", k, o.detail);
  }
  return {ok == static_cast<int>(pairs.size()), fmt::format("{}/{} pairs uniform{}", ok, pairs.size(), first_failure)};
}

Outcome blanco_forward() {
  int ok = 0, total = 0;
  double worst = 0.0;
  for (const Point2 p : {Point2{0.0, 0.0}, Point2{0.3, -0.2}, Point2{-0.1, 0.4}}) {
    for (double r : {0.1, 0.25, 0.4}) {
      const auto d = ConvexBody2::disc(p, r);
      const BlancoReport rep = blanco_defect(d, p);
      worst = std::max(worst, rep.defect);
      ok += rep.defect < 1e-9 && blanco_conclusion_check(rep, 1e-8);
      ++total;
    }
  }
  return {ok == total && total == 9, fmt::format("{}/{} discs, max defect {:.3g}", ok, total, worst)};
}

Outcome blanco_falsification() {
  const auto e = ConvexBody2::ellipse({0.0, 0.0}, 0.5, 0.3, 0.0);
  const BlancoReport r = blanco_defect(e, {0.0, 0.0});
  // Frozen from a brute-force computation over dense boundary samples.
  const double frozen = 0.0802512;
  const bool matches = std::abs(r.defect - frozen) < 1e-4 * frozen;
  return {r.defect > 0.01 && !blanco_conclusion_check(r, 1e-8) && matches,
          fmt::format("defect={:.10f} frozen={}", r.defect, frozen)};
}

Outcome q_region_reconstruction() {
  const auto d = ConvexBody2::disc({0.0, 0.0}, 0.5);
  std::vector<PonceletState> states;
  for (int i = 0; i < 36; ++i) states.push_back(poncelet_polygon(kUnit, d, unit(kTwoPi * i / 36.0)));
  const double h = hausdorff_distance(q_region(states, d), d);
  return {h < 5e-3, fmt::format("hausdorff={:.6f}", h)};
}

Outcome sphere_forward() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::vector<Vec3> views = fibonacci_sphere(50);
  double worst_residual = 0.0, worst_center = 0.0;
  int circular = 0, cones = 0, sections_ok = 0, sections = 0;
  for (int s = 0; s < 5; ++s) {
    Vec3 c;
    do {
      c = Vec3(u(rng), u(rng), u(rng)) * 0.4;
    } while (c.norm() > 0.4);
    const double r = 0.1 + (0.85 - c.norm() - 0.1) * 0.5 * (u(rng) + 1.0);
    const Quadric3 q = Quadric3::sphere(c, r);
    std::vector<Line3> axes;
    for (const Vec3& x : views) {
      const ConeQuadratic cone = tangent_cone(q, x);
      axes.push_back(cone_axis(cone));
      circular += is_right_circular(cone, 1e-9);
      ++cones;
    }
    const ConcurrencyReport rep = axes_concurrency(axes);
    worst_residual = std::max(worst_residual, rep.residual);
    worst_center = std::max(worst_center, (rep.best_point - c).norm());
    for (int k = 0; k < 20; ++k) {
      const Vec3 n = Vec3(g(rng), g(rng), g(rng)).normalized();
      const BabelSection sec = babel_section_reduce(q, c, Plane3::through(c, n));
      sections_ok += blanco_conclusion_check(sec.section, sec.p, 1e-8);
      ++sections;
    }
  }
  return {worst_residual < 1e-8 && worst_center < 1e-7 && circular == cones && sections_ok == sections,
          fmt::format("residual={:.3g} center_err={:.3g} right_circular={}/{} sections={}/{}", worst_residual,
                      worst_center, circular, cones, sections_ok, sections)};
}

Outcome triaxial_contrapositive() {
  const Quadric3 q = Quadric3::from_axes(Vec3::Zero(), Vec3(0.45, 0.35, 0.25));
  std::vector<Line3> axes;
  for (const Vec3& x : fibonacci_sphere(50)) axes.push_back(cone_axis(tangent_cone(q, x)));
  const double residual = axes_concurrency(axes).residual;
  const double frozen = 0.0442783217;
  return {residual > 1e-3 && std::abs(residual - frozen) < 1e-6 * frozen,
          fmt::format("residual={:.10f} frozen={}", residual, frozen)};
}

Outcome mari() {
  const MariReport yes = mari_harness(Quadric3::sphere(Vec3(0.0, 0.0, 0.1), 0.3), Plane3(Vec3::UnitZ(), 0.0));
  const MariReport no = mari_harness(Quadric3::from_axes(Vec3::Zero(), Vec3(0.3, 0.3, 0.5)), Plane3(Vec3::UnitZ(), 0.0));
  const bool sphere_ok = yes.verdict && yes.concurrency.residual < 1e-8 && yes.all_right_circular;
  const bool spheroid_ok = !no.verdict && no.max_eigen_gap > 1e-4;
  return {sphere_ok && spheroid_ok,
          fmt::format("sphere verdict={} residual={:.3g}; spheroid verdict={} gap={:.4f}", yes.verdict,
                      yes.concurrency.residual, no.verdict, no.max_eigen_gap)};
}

Outcome mirror_property() {
  int agree = 0, symmetric = 0;
  const auto cases = corpus::mirror_cases();
  for (const corpus::MirrorCase& c : cases) {
    const GarnachasReport r = equal_angle_defect(c.body, c.mirror);
    const bool sym = r.symmetry_defect < 1e-9;
    const bool eq = r.angle_defect < 1e-8;
    agree += sym == eq;
    symmetric += sym;
  }
  return {agree == static_cast<int>(cases.size()),
          fmt::format("{}/{} agree ({} symmetric, {} not)", agree, cases.size(), symmetric,
                      static_cast<int>(cases.size()) - symmetric)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

Outcome cli_determinism() {
  const fs::path work = fs::path(ACCEPTANCE_WORKDIR) / "determinism";
  fs::remove_all(work);
  fs::create_directories(work);
  write_file(work / "disc.json", R"({"kind": "disc", "center": [0.0, 0.0], "radius": 0.5})");
  write_file(work / "irrational.json", R"({"kind": "disc", "center": [0.1, 0.05], "radius": 0.3})");
  write_file(work / "ellipse.json", R"({"kind": "ellipse", "center": [0.0, 0.0], "semiaxes": [0.5, 0.3], "rotation": 0.2})");
  write_file(work / "sphere.json", R"({"center": [0.0, 0.0, 0.1], "radius": 0.3})");
  write_file(work / "triaxial.json", R"({"center": [0.0, 0.0, 0.0], "semiaxes": [0.45, 0.35, 0.25]})");

  struct Run {
    std::string name;
    std::string args;
    std::string config;
  };
  const std::vector<Run> runs = {
      {"poncelet_closed", "poncelet", R"({"body": "disc.json", "start": 0.3})"},
      {"poncelet_open", "poncelet", R"({"body": "irrational.json", "max-steps": 5000})"},
      {"fer", "fer", R"({"t": 0.2, "k": 4})"},
      {"blanco", "blanco", R"({"body": "ellipse.json", "p": [0.05, 0.0], "samples": 180})"},
      {"axis", "cone axis", R"({"quadric": "triaxial.json", "count": 40})"},
      {"concurrency", "cone concurrency", R"({"quadric": "triaxial.json"})"},
      {"babel", "cone babel", R"({"quadric": "triaxial.json", "sections": 4, "seed": 11})"},
      {"mari", "cone mari", R"({"quadric": "sphere.json", "plane": [0, 0, 1, 0]})"},
      {"gruber", "cone explore-gruber", R"({"steps": 4, "count": 30})"},
  };
  int identical = 0;
  std::string failures;
  for (const Run& run : runs) {
    write_file(work / (run.name + ".cfg.json"), run.config);
    bool same = true;
    std::vector<std::string> listing[2];
    for (int pass = 0; pass < 2; ++pass) {
      const std::string out = fmt::format("out{}_{}", pass, run.name);
      const std::string cmd = fmt::format("cd \"{}\" && \"{}\" {} --config {}.cfg.json --out {} > {}.stdout 2>&1",
                                          work.string(), CONELAB_CLI, run.args, run.name, out, out);
      if (std::system(cmd.c_str()) != 0) same = false;
      for (const auto& entry : fs::directory_iterator(work / out)) listing[pass].push_back(entry.path().filename());
      std::sort(listing[pass].begin(), listing[pass].end());
    }
    same = same && !listing[0].empty() && listing[0] == listing[1];
    for (std::size_t i = 0; same && i < listing[0].size(); ++i) {
      same = slurp(work / ("out0_" + run.name) / listing[0][i]) == slurp(work / ("out1_" + run.name) / listing[0][i]);
    }
    same = same && slurp(work / ("out0_" + run.name + ".stdout")) == slurp(work / ("out1_" + run.name + ".stdout"));
    identical += same;
    if (!same) failures += " " + run.name;
  }
  return {identical == static_cast<int>(runs.size()),
          fmt::format("{}/{} commands byte-identical{}", identical, runs.size(), failures)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "concentric closure radii", 5.0, concentric_radii},
      {2, "Euler triangle closure", 5.0, euler_triangle},
      {3, "Fuss bicentric quadrilateral", 0.0, fuss_quadrilateral},
      {4, "closure invariant over starts", 0.0, porism_invariance},
      {5, "bisector harness on discs", 0.0, blanco_forward},
      {6, "bisector harness rejects the ellipse", 0.0, blanco_falsification},
      {7, "region from tangent half-planes", 0.0, q_region_reconstruction},
      {8, "sphere cones: concurrent axes, circular sections", 30.0, sphere_forward},
      {9, "triaxial ellipsoid axes miss each other", 0.0, triaxial_contrapositive},
      {10, "plane of viewpoints: sphere vs spheroid", 0.0, mari},
      {11, "mirror symmetry iff equal tangent angles", 0.0, mirror_property},
      {12, "CLI determinism", 0.0, cli_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      o.detail += fmt::format(" (over {}s limit)", c.time_limit);
    }
    failed += !o.pass;
    fmt::print("{} [{:2}] {}: {} ({:.2f}s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail, secs);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
