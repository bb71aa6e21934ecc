#include "szegolab/errors.hpp"

namespace szegolab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::WindowBelowFloor: return "WindowBelowFloor";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::ModulusViolation: return "ModulusViolation";
    case ErrorCode::IdentityDrift: return "IdentityDrift";
    case ErrorCode::NonSzegoWeight: return "NonSzegoWeight";
    case ErrorCode::PoleOnGrid: return "PoleOnGrid";
    case ErrorCode::NoExponentialDecay: return "NoExponentialDecay";
    case ErrorCode::OutsideValidatedAnnulus: return "OutsideValidatedAnnulus";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::PathsDisagree: return "PathsDisagree";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::OrderAmbiguous: return "OrderAmbiguous";
    case ErrorCode::SingularToeplitz: return "SingularToeplitz";
    case ErrorCode::AllSpurious: return "AllSpurious";
    case ErrorCode::NotGenerated: return "NotGenerated";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::QuadratureUnresolved: return "QuadratureUnresolved";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

}  // namespace szegolab
