#pragma once

#include <stdexcept>
#include <string>

namespace dcdepol {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  InvalidDensityMatrix,
  LabelOutOfRange,
  IndexOutOfRange,
  InvalidWeights,
  RankOutOfRange,
  WrongQubitCount,
  InvalidArgument,
  Parse,
  Io,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::WrongQubitCount: return "WrongQubitCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace dcdepol
