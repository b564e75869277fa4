#pragma once

#include <stdexcept>
#include <string>

namespace dotr {

// Spec: malformed inputs (bad JSON, mismatched tables, missing fields).
// The remaining codes are numeric-domain failures raised during computation.
enum class ErrorCode {
  Spec,
  Domain,
  ClassificationAmbiguous,
  ConditionViolated,
  InvalidTheta,
  EmptyInput,
  UnsupportedKind,
  MarginalMismatch,
  InstanceTooLarge,
  NotConvex,
  InfeasiblePair,
  NoApplicableRule,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dotr
