#include "effpot/errors.hpp"

namespace effpot {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::ZeroExtent: return "ZeroExtent";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonpositiveCoefficient: return "NonpositiveCoefficient";
    case ErrorCode::NegativePotential: return "NegativePotential";
    case ErrorCode::EmptyIndexSet: return "EmptyIndexSet";
    case ErrorCode::DegeneratePotential: return "DegeneratePotential";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonpositiveLandscape: return "NonpositiveLandscape";
    case ErrorCode::NegativeLevel: return "NegativeLevel";
    case ErrorCode::EmptySourceSet: return "EmptySourceSet";
    case ErrorCode::OverlappingComponents: return "OverlappingComponents";
    case ErrorCode::EmptyWellSet: return "EmptyWellSet";
    case ErrorCode::KExceedsDof: return "KExceedsDof";
    case ErrorCode::EmptyOmega: return "EmptyOmega";
    case ErrorCode::StaleLandscape: return "StaleLandscape";
    case ErrorCode::InadmissibleTestFunction: return "InadmissibleTestFunction";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::AllZeroRealization: return "AllZeroRealization";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace effpot
