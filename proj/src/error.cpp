#include "readiness/error.hpp"

namespace readiness {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::Io: return "Io";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotNumeric: return "NotNumeric";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NoFeaturesSelected: return "NoFeaturesSelected";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingFeature: return "MissingFeature";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::UnknownVersion: return "UnknownVersion";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotConverged: return "NotConverged";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message) {
  return std::string(error_code_name(code)) + ": " + message;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(decorate(code, message)), code_(code), message_(message) {}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> row,
             std::optional<std::string> column)
    : std::runtime_error(decorate(code, message)),
      code_(code),
      message_(message),
      row_(row),
      column_(std::move(column)) {}

}  // namespace readiness
