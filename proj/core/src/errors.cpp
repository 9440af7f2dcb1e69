#include "kwz/errors.hpp"

namespace kwz {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::InconsistentOrientation: return "InconsistentOrientation";
    case ErrorCode::NotSphere: return "NotSphere";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::OrientationMismatch: return "OrientationMismatch";
    case ErrorCode::PhiOutOfRange: return "PhiOutOfRange";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::ZeroLengthSegment: return "ZeroLengthSegment";
    case ErrorCode::LayoutSingular: return "LayoutSingular";
    case ErrorCode::CrossingDetected: return "CrossingDetected";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorCode::InconsistentPropagation: return "InconsistentPropagation";
    case ErrorCode::ZeroSpinor: return "ZeroSpinor";
    case ErrorCode::IsometryResidual: return "IsometryResidual";
    case ErrorCode::SvdFailure: return "SvdFailure";
    case ErrorCode::SelfTestFailed: return "SelfTestFailed";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidMesh: return "InvalidMesh";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace kwz
