#pragma once

#include <stdexcept>
#include <string>

namespace kwz {

// Failure taxonomy for mesh validation, geometry construction, and the
// verification stages. Every throwing path in the library uses Error with one
// of these codes so that callers (CLI, tests) can map failures structurally.
enum class ErrorCode {
  // combinatorial mesh validation
  NonManifoldEdge,
  InconsistentOrientation,
  NotSphere,
  Disconnected,
  // geometric validation
  DegenerateFace,
  OrientationMismatch,
  // weights
  PhiOutOfRange,
  SingularCoupling,
  // unfolding
  ZeroLengthSegment,
  LayoutSingular,
  CrossingDetected,
  DecompositionFailed,
  // rotation group
  NotUnitary,
  NonUnitQuaternion,
  InconsistentPropagation,
  ZeroSpinor,
  IsometryResidual,
  // linear algebra / enumeration
  SvdFailure,
  SelfTestFailed,
  TooLarge,
  // input / output
  InvalidMesh,
  IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return to_string(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace kwz
