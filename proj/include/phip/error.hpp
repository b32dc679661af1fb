#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phip {

enum class ErrorCode {
  InvalidArgument,
  InvalidGraph,
  InvalidChain,
  DisconnectedGraph,
  IsolatedVertex,
  NotStronglyConnected,
  SinkVertex,
  NotIrreducible,
  NumericalFailure,
  DeltaOutOfRange,
  NonSquare,
  NoConvergence,
  NotReversible,
  DegenerateEigenvector,
  ZeroVector,
  EmptySet,
  MassTooLarge,
  NoAdmissibleSet,
  TooLarge,
  ExponentOutOfRange,
  LogDomain,
  TooSmall,
  NonSymmetricCirculant,
  DimensionTooLarge,
  OverlappingSets,
  InvalidBlocks,
  NoZeroBlock,
  PostconditionFailed,
  ParseError,
  NegativeWeight,
  InconsistentHeader,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::SinkVertex: return "SinkVertex";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::DegenerateEigenvector: return "DegenerateEigenvector";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::MassTooLarge: return "MassTooLarge";
    case ErrorCode::NoAdmissibleSet: return "NoAdmissibleSet";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
    case ErrorCode::LogDomain: return "LogDomain";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::NonSymmetricCirculant: return "NonSymmetricCirculant";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::OverlappingSets: return "OverlappingSets";
    case ErrorCode::InvalidBlocks: return "InvalidBlocks";
    case ErrorCode::NoZeroBlock: return "NoZeroBlock";
    case ErrorCode::PostconditionFailed: return "PostconditionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::InconsistentHeader: return "InconsistentHeader";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace phip
