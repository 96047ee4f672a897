#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adaclust {

enum class ErrorCode {
  InvalidWidth,
  InvalidDomain,
  OutOfDomain,
  InvalidIndex,
  PartitionMismatch,
  EmptyData,
  InvalidSup,
  SampleTooSmall,
  InvalidTau,
  EmptySet,
  NotNested,
  InvalidParams,
  ScanExhausted,
  InvalidFamily,
  DegenerateInterval,
  AllCandidatesFailed,
  InvalidLevel,
  AboveTop,
  InvalidEps,
  NoFeasibleEps,
  FitUnderdetermined,
  ParseError,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

// Base exception for every failure raised by the library. Callers that need
// to branch on the failure kind inspect code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adaclust
