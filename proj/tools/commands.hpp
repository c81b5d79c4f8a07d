#pragma once

#include <optional>
#include <string>
#include <vector>

namespace conelab::cli {

struct OutputOptions {
  std::string out = ".";
  std::vector<std::string> formats = {"csv", "json", "svg"};
};

struct PonceletOptions {
  std::string body;
  double start = 0.0;  // angle of the first vertex on the unit circle
  int max_steps = 100000;
  double tol = 1e-9;
};

struct FerOptions {
  double t = 0.0;  // inner center at (t, 0)
  int k = 3;
  int starts = 100;
  double tol = 1e-9;
};

struct BlancoOptions {
  std::string body;
  std::string p = "0,0";
  int samples = 360;
  double tol = 1e-8;
};

struct ConeOptions {
  std::string quadric;
  std::string viewpoints = "sphere";
  int count = 50;
  std::string plane = "0,0,1,0";  // nx,ny,nz,offset
  std::optional<long long> seed;
  // Per subcommand.
  double tol = 1e-9;
  std::string p;  // babel: point inside the body, defaults to its center
  int sections = 20;
  int samples = 360;
  int steps = 10;  // explore-gruber sweep length
};

int run_poncelet(const PonceletOptions& opt, const OutputOptions& out);
int run_fer(const FerOptions& opt, const OutputOptions& out);
int run_blanco(const BlancoOptions& opt, const OutputOptions& out);
int run_cone_axis(const ConeOptions& opt, const OutputOptions& out, bool with_concurrency);
int run_cone_babel(const ConeOptions& opt, const OutputOptions& out);
int run_cone_mari(const ConeOptions& opt, const OutputOptions& out);
int run_cone_gruber(const ConeOptions& opt, const OutputOptions& out);

}  // namespace conelab::cli
