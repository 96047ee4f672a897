#include "adaclust/error.hpp"

namespace adaclust {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidWidth: return "InvalidWidth";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::EmptyData: return "EmptyData";
    case ErrorCode::InvalidSup: return "InvalidSup";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::InvalidTau: return "InvalidTau";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ScanExhausted: return "ScanExhausted";
    case ErrorCode::InvalidFamily: return "InvalidFamily";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::AllCandidatesFailed: return "AllCandidatesFailed";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::AboveTop: return "AboveTop";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::NoFeasibleEps: return "NoFeasibleEps";
    case ErrorCode::FitUnderdetermined: return "FitUnderdetermined";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace adaclust
