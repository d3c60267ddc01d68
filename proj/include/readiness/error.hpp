#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace readiness {

// Values are shared with the C API status codes in readiness.h.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  ConfigError = 2,
  Io = 3,
  EmptyFile = 10,
  MissingColumn = 11,
  OutOfRange = 12,
  NotNumeric = 13,
  MissingValue = 14,
  DegenerateSplit = 15,
  EmptyColumn = 16,
  UnknownLabel = 20,
  NoFeaturesSelected = 21,
  DimensionMismatch = 30,
  MissingFeature = 31,
  LengthMismatch = 32,
  Empty = 33,
  UnknownVersion = 40,
  MalformedDocument = 41,
  UnknownTerm = 50,
  AlphaOutOfRange = 51,
  InvalidPartition = 52,
  RankDeficient = 60,
  NotConverged = 61,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Failure raised by every module of the engine. Data-validation failures
/// carry the offending data row (1-based, header excluded) and column label.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row,
        std::optional<std::string> column);

  ErrorCode code() const noexcept { return code_; }
  /// Text without the "Name: " prefix, for re-wrapping.
  const std::string& message() const noexcept { return message_; }
  const std::optional<std::size_t>& row() const noexcept { return row_; }
  const std::optional<std::string>& column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> row_;
  std::optional<std::string> column_;
};

}  // namespace readiness
