#include "io.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace conelab::cli {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ConfigError(fmt::format("expected number field '{}'", key));
  return j.at(key).get<double>();
}

std::vector<double> numbers(const json& j, const char* key, std::size_t n) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != n)
    throw ConfigError(fmt::format("expected array of {} numbers in '{}'", n, key));
  std::vector<double> out;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) throw ConfigError(fmt::format("non-numeric entry in '{}'", key));
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
}

ConvexBody2 body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("body needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "disc") {
    const auto c = numbers(j, "center", 2);
    return ConvexBody2::disc({c[0], c[1]}, number(j, "radius"));
  }
  if (kind == "ellipse") {
    const auto c = numbers(j, "center", 2);
    const auto ax = numbers(j, "semiaxes", 2);
    const double rot = j.contains("rotation") ? number(j, "rotation") : 0.0;
    return ConvexBody2::ellipse({c[0], c[1]}, ax[0], ax[1], rot);
  }
  if (kind == "generic") {
    if (!j.contains("support_table") || !j.at("support_table").is_array())
      throw ConfigError("generic body needs 'support_table'");
    std::vector<double> table;
    for (const json& v : j.at("support_table")) {
      if (!v.is_number()) throw ConfigError("non-numeric support_table entry");
      table.push_back(v.get<double>());
    }
    return ConvexBody2::generic(std::move(table));
  }
  throw ConfigError("unknown body kind '" + kind + "'");
}

ConvexBody2 load_body(const std::string& path) { return body_from_json(read_json_file(path)); }

json body_to_json(const ConvexBody2& body) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Disc>) {
          return {{"kind", "disc"}, {"center", to_json(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<S, Ellipse>) {
          return {{"kind", "ellipse"},
                  {"center", to_json(s.center)},
                  {"semiaxes", {s.semiaxis_a, s.semiaxis_b}},
                  {"rotation", s.rotation}};
        } else {
          return {{"kind", "generic"}, {"support_table", std::vector<double>(s.values().begin(), s.values().end())}};
        }
      },
      body.shape());
}

Quadric3 quadric_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("quadric must be a JSON object");
  const auto c = numbers(j, "center", 3);
  const Vec3 center(c[0], c[1], c[2]);
  if (j.contains("radius")) return Quadric3::sphere(center, number(j, "radius"));
  const auto ax = numbers(j, "semiaxes", 3);
  Mat3 rot = Mat3::Identity();
  if (j.contains("rotation")) {
    const json& r = j.at("rotation");
    if (!r.is_array() || r.size() != 3) throw ConfigError("'rotation' must be 3 rows");
    for (int i = 0; i < 3; ++i) {
      if (!r[i].is_array() || r[i].size() != 3) throw ConfigError("'rotation' must be 3 rows of 3");
      for (int k = 0; k < 3; ++k) rot(i, k) = r[i][k].get<double>();
    }
    if (!(rot * rot.transpose()).isApprox(Mat3::Identity(), 1e-9)) throw ConfigError("'rotation' is not orthogonal");
  }
  return Quadric3::from_axes(center, Vec3(ax[0], ax[1], ax[2]), rot);
}

Quadric3 load_quadric(const std::string& path) { return quadric_from_json(read_json_file(path)); }

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("bad number '{}' in {}", item, what));
    }
    if (!std::isfinite(out.back())) throw ConfigError("non-finite value in " + what);
  }
  if (out.size() != expected) throw ConfigError(fmt::format("{} needs {} comma-separated numbers", what, expected));
  return out;
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json to_json(Point2 p) { return json::array({p.x, p.y}); }

Formats::Formats(const std::vector<std::string>& names) {
  for (const std::string& n : names) {
    if (n != "csv" && n != "json" && n != "svg") throw ConfigError("unknown format '" + n + "'");
    set_.insert(n);
  }
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError(fmt::format("cannot create {}: {}", dir, ec.message()));
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    std::visit(
        [this](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>) {
            text_ += fmt::format("{:.17g}", v);
          } else if constexpr (std::is_same_v<V, long long>) {
            text_ += fmt::format("{}", v);
          } else {
            text_ += v;
          }
        },
        cells[i]);
  }
  text_ += '\n';
}

}  // namespace conelab::cli
