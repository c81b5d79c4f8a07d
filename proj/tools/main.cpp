// conelab: command-line driver for the planar and spatial experiments.
// Exit codes: 0 ok, 2 bad configuration, 3 geometric error.

#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "conelab/errors.hpp"
#include "io.hpp"

using namespace conelab;
using namespace conelab::cli;
using nlohmann::json;

namespace {

std::string scalar_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ConfigError("config key '" + key + "' has an unsupported value");
}

// Fill options not given on the command line from a flat JSON object whose
// keys are the long flag names. Flags win over the file.
void apply_config(const std::vector<CLI::App*>& chain, const json& cfg) {
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
  std::set<std::string> known;
  for (CLI::App* app : chain) {
    for (CLI::Option* opt : app->get_options()) {
      const std::string name = opt->get_single_name();
      if (name == "help" || name == "config") continue;
      known.insert(name);
      if (opt->count() > 0 || !cfg.contains(name)) continue;
      const json& v = cfg.at(name);
      std::vector<std::string> values;
      if (v.is_array()) {
        std::vector<std::string> parts;
        for (const json& e : v) parts.push_back(scalar_text(e, name));
        if (opt->get_expected_max() > 1) {
          values = parts;
        } else {
          std::string joined;
          for (const std::string& s : parts) joined += (joined.empty() ? "" : ",") + s;
          values.push_back(joined);
        }
      } else {
        values.push_back(scalar_text(v, name));
      }
      opt->add_result(values);
      opt->run_callback();
    }
  }
  for (const auto& item : cfg.items()) {
    if (!known.count(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poncelet closure, tangent-line harnesses and tangent cones of quadrics"};
  app.require_subcommand(1);

  OutputOptions out;
  std::string config;
  app.add_option("--out", out.out, "Output directory");
  app.add_option("--format", out.formats, "Artifacts to write: csv, json, svg")->delimiter(',');
  app.add_option("--config", config, "JSON file with flag values; flags override it");

  PonceletOptions pon;
  CLI::App* poncelet = app.add_subcommand("poncelet", "Iterate the tangent polygon inscribed in the unit circle");
  poncelet->add_option("--body", pon.body, "Inner body JSON");
  poncelet->add_option("--start", pon.start, "Start angle on the unit circle");
  poncelet->add_option("--max-steps", pon.max_steps);
  poncelet->add_option("--tol", pon.tol, "Closure tolerance (arc length)")->check(CLI::PositiveNumber);

  FerOptions fer;
  CLI::App* fer_cmd = app.add_subcommand("fer", "Radius of the circle centered at (t,0) giving a closed k-gon");
  fer_cmd->add_option("--t", fer.t, "Center offset");
  fer_cmd->add_option("--k", fer.k, "Vertex count");
  fer_cmd->add_option("--starts", fer.starts, "Starts in the closure check");
  fer_cmd->add_option("--tol", fer.tol, "Closure tolerance")->check(CLI::PositiveNumber);

  BlancoOptions bl;
  CLI::App* blanco = app.add_subcommand("blanco", "Bisector harness for a body in the unit disc");
  blanco->add_option("--body", bl.body, "Body JSON");
  blanco->add_option("--p", bl.p, "Point X,Y");
  blanco->add_option("--samples", bl.samples, "Viewpoints on the unit circle");
  blanco->add_option("--tol", bl.tol, "Verdict tolerance")->check(CLI::PositiveNumber);

  ConeOptions co;
  long long seed = 0;
  CLI::App* cone = app.add_subcommand("cone", "Tangent cones of an ellipsoid");
  cone->require_subcommand(1);
  cone->add_option("--quadric", co.quadric, "Quadric JSON");
  cone->add_option("--viewpoints", co.viewpoints, "sphere | plane")->check(CLI::IsMember({"sphere", "plane"}));
  cone->add_option("--count", co.count, "Number of viewpoints");
  cone->add_option("--plane", co.plane, "Plane NX,NY,NZ,OFFSET");
  CLI::Option* seed_opt = cone->add_option("--seed", seed, "Seed for random section planes");

  CLI::App* axis = cone->add_subcommand("axis", "Cone axes and right-circularity per viewpoint");
  CLI::App* conc = cone->add_subcommand("concurrency", "Least-squares meeting point of the axes");
  CLI::App* babel = cone->add_subcommand("babel", "Planar sections through p reduced to the disc harness");
  CLI::App* mari = cone->add_subcommand("mari", "Viewpoints on a plane: axes, section symmetry");
  CLI::App* gruber = cone->add_subcommand("explore-gruber", "Concurrency residual over ellipsoid eccentricity");
  double axis_tol = 1e-9, babel_tol = 1e-8, mari_tol = 1e-9;
  int babel_samples = 360, mari_samples = 64;
  for (CLI::App* s : {axis, conc})
    s->add_option("--tol", axis_tol, "Right-circular tolerance")->check(CLI::PositiveNumber);
  babel->add_option("--p", co.p, "Point X,Y,Z (default: quadric center)");
  babel->add_option("--sections", co.sections);
  babel->add_option("--samples", babel_samples, "Viewpoints per section");
  babel->add_option("--tol", babel_tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  mari->add_option("--samples", mari_samples, "Samples for the section checks");
  mari->add_option("--tol", mari_tol, "Right-circular tolerance")->check(CLI::PositiveNumber);
  gruber->add_option("--steps", co.steps, "Eccentricity samples");

  for (CLI::App* s : {poncelet, fer_cmd, blanco, cone, axis, conc, babel, mari, gruber}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::vector<CLI::App*> chain = {&app};
    for (CLI::App* s = &app; !s->get_subcommands().empty();) {
      s = s->get_subcommands().front();
      chain.push_back(s);
    }
    CLI::App* leaf = chain.back();
    if (!config.empty()) apply_config(chain, read_json_file(config));
    if (seed_opt->count() > 0) co.seed = seed;
    co.tol = leaf == babel ? babel_tol : (leaf == mari ? mari_tol : axis_tol);
    co.samples = leaf == babel ? babel_samples : mari_samples;

    if (leaf == poncelet) return run_poncelet(pon, out);
    if (leaf == fer_cmd) return run_fer(fer, out);
    if (leaf == blanco) return run_blanco(bl, out);
    if (leaf == axis) return run_cone_axis(co, out, false);
    if (leaf == conc) return run_cone_axis(co, out, true);
    if (leaf == babel) return run_cone_babel(co, out);
    if (leaf == mari) return run_cone_mari(co, out);
    if (leaf == gruber) return run_cone_gruber(co, out);
    return 2;
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const CLI::Error& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  } catch (const GeometryError& e) {
    fmt::print(stderr, "geometry error ({}): {}\n", to_string(e.kind()), e.what());
    return 3;
  }
}
