#include "regdyn/error.hpp"

namespace regdyn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidDegree: return "InvalidDegree";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotIsolated: return "NotIsolated";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::ProjectionUndefined: return "ProjectionUndefined";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::CertificateUnavailable: return "CertificateUnavailable";
    case ErrorCode::InstanceError: return "InstanceError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

Error::Error(std::string module, ErrorCode code, const std::string& detail)
    : std::runtime_error(module + "." + regdyn::to_string(code) + ": " + detail),
      module_(std::move(module)),
      code_(code),
      detail_(detail) {}

std::string Error::qualified_code() const {
  return module_ + "." + regdyn::to_string(code_);
}

SyntaxError::SyntaxError(std::size_t offset, const std::string& detail)
    : Error("parser", ErrorCode::SyntaxError,
            detail + " at offset " + std::to_string(offset)),
      offset_(offset) {}

}  // namespace regdyn
