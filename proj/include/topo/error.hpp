#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace topo {

enum class ErrorCode {
  EmptyRegion,
  EmptySubset,
  DisconnectedCss,
  NotACycle,
  NotAnnular,
  TooManySubsystems,
  TooFewSubsystems,
  TooManyVertices,
  TooManyQubits,
  SingularK,
  MismatchBetweenPaths,
  PreconditionViolated,
  LatticeTooSmall,
  WindingRegion,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this exception; code() identifies the
// failure class and what() carries location details where available.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace topo
