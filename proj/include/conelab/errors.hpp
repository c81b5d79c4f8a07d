#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conelab {

enum class ErrorKind {
  Precondition,
  CoincidentLines,
  InteriorPoint,
  TangentDegenerate,
  ConvexityViolation,
  InvalidBody,
  Containment,
  BracketFailure,
  EmptyIntersection,
  NoExteriorPoints,
  DegenerateSignature,
  UnboundedSection,
  RankDeficient,
  SectionEmpty,
  PlaneMissesSphere,
};

std::string_view to_string(ErrorKind kind);

// Every geometric failure raised by the library. The kind is stable and is
// what callers (and the CLI exit-code mapping) switch on.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace conelab
