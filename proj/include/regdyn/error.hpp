#pragma once

#include <stdexcept>
#include <string>

namespace regdyn {

enum class ErrorCode {
  DegenerateInput,
  InvalidDegree,
  FieldMismatch,
  UnknownVariable,
  SyntaxError,
  InvalidCoefficient,
  SchemaError,
  DimensionError,
  NotRegular,
  ResourceLimit,
  SingularMatrix,
  NotIsolated,
  UnsupportedField,
  NotOnCurve,
  SamplingExhausted,
  ProjectionUndefined,
  InvalidChart,
  CertificateUnavailable,
  InstanceError,
  InvalidInput,
  UnsupportedDegree,
  Degenerate,
  NotPeriodic,
  UnsupportedDimension,
};

const char* to_string(ErrorCode code);

/// Domain error raised by every module. `module()` names the raising module
/// ("core", "parser", "endo", ...), so the CLI can print "endo.NotRegular".
class Error : public std::runtime_error {
 public:
  Error(std::string module, ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& detail() const noexcept { return detail_; }
  std::string qualified_code() const;

 private:
  std::string module_;
  ErrorCode code_;
  std::string detail_;
};

/// Parse failure with a byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& detail);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace regdyn
