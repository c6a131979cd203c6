#include "agency/error.hpp"

namespace agency {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::TooManyInputs: return "TooManyInputs";
    case ErrorCode::ModelShapeMismatch: return "ModelShapeMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::UnknownModality: return "UnknownModality";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::ImpossibleObservation: return "ImpossibleObservation";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace agency
