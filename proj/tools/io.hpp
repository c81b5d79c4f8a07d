#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "conelab/body.hpp"
#include "conelab/cone3d.hpp"

namespace conelab::cli {

// Bad flags, unreadable files, malformed JSON. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path);

// {"kind": "disc" | "ellipse" | "generic", "center", "radius", "semiaxes", "rotation", "support_table"}
ConvexBody2 body_from_json(const nlohmann::json& j);
ConvexBody2 load_body(const std::string& path);
nlohmann::json body_to_json(const ConvexBody2& body);

// {"center": [x,y,z], "semiaxes": [a,b,c], "rotation": 3x3 rows} or {"center", "radius"}.
Quadric3 quadric_from_json(const nlohmann::json& j);
Quadric3 load_quadric(const std::string& path);

// "x,y" or "x,y,z".
std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what);

nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(Point2 p);

// Which artifact kinds to write.
class Formats {
 public:
  explicit Formats(const std::vector<std::string>& names);
  bool csv() const { return set_.count("csv") > 0; }
  bool json() const { return set_.count("json") > 0; }
  bool svg() const { return set_.count("svg") > 0; }

 private:
  std::set<std::string> set_;
};

std::filesystem::path prepare_out_dir(const std::string& dir);
void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// CSV with a fixed header; doubles at 17 significant digits.
class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<Cell>& cells);
  std::string str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

}  // namespace conelab::cli
