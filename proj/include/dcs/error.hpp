#pragma once

#include <stdexcept>
#include <string>

namespace dcs {

enum class Errc {
  // surface construction
  NonManifold,
  Disconnected,
  DegenerateFace,
  // triangle geometry
  NonPositiveLength,
  NotEmbeddable,
  // conformal structures
  InvalidRadicand,
  NoRealLength,
  TanhOutOfRange,
  BranchFailure,
  FaceNotEmbeddable,
  CompatibilityViolated,
  PerturbationInvalid,
  // gauge / conversion
  WrongFamily,
  NotSimplyConnected,
  InconsistentCocycle,
  DomainViolation,
  UnsupportedSignPattern,
  // classifier
  WrongGeometry,
  ProviderFailure,
  NotClassifiable,
  InconsistentConstant,
  // solver
  InfeasibleTarget,
  StepDegenerate,
  MaxIterations,
  // file IO
  SchemaError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace dcs
