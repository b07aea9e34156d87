#include "hlab/core.hpp"

namespace hlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRegion: return "EmptyRegion";
    case ErrorCode::FullVolume: return "FullVolume";
    case ErrorCode::SupportNotContained: return "SupportNotContained";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateCut: return "DegenerateCut";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::BadCoupling: return "BadCoupling";
    case ErrorCode::GeometryOverflow: return "GeometryOverflow";
    case ErrorCode::NotGapped: return "NotGapped";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::BadGeometry: return "BadGeometry";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::DefectTooLarge: return "DefectTooLarge";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::BadConstants: return "BadConstants";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace hlab
