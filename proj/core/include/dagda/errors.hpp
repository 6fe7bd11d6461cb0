#pragma once

#include <stdexcept>
#include <string>

namespace dagda {

// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kNumerical = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kData; }
};

// Bad argument value or invalid configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kUsage; }
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kNumerical; }
};

// Operand shapes do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NegativeEntryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IsolatedNodeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LabelRangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SplitOverlapError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SplitCoverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A sample or label set violates the seen/unseen protocol.
class ProtocolError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MetricUndefinedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class MissingFileError : public IoError {
 public:
  using IoError::IoError;
};

class FormatError : public IoError {
 public:
  using IoError::IoError;
};

class MalformedHeaderError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TruncatedPayloadError : public FormatError {
 public:
  using FormatError::FormatError;
};

class DimensionOverflowError : public FormatError {
 public:
  using FormatError::FormatError;
};

class TrailingDataError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ParseError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace dagda
