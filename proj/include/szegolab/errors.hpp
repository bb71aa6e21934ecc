#pragma once

#include <stdexcept>
#include <string>

namespace szegolab {

// Every domain failure in the toolkit carries one of these codes so the CLI
// can emit a structured, machine-readable error and exit with code 2.
enum class ErrorCode {
  ZeroConstantTerm,
  WindowBelowFloor,
  WindowTooShort,
  ModulusViolation,
  IdentityDrift,
  NonSzegoWeight,
  PoleOnGrid,
  NoExponentialDecay,
  OutsideValidatedAnnulus,
  NearPole,
  PathsDisagree,
  PoleProximity,
  OutOfRegion,
  IllConditioned,
  OrderAmbiguous,
  SingularToeplitz,
  AllSpurious,
  NotGenerated,
  NotNormalized,
  NotPositiveDefinite,
  QuadratureUnresolved,
  BadInput,
  IoFailure,
};

const char* error_code_name(ErrorCode code);

class SzegoLabError : public std::runtime_error {
 public:
  SzegoLabError(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(std::move(message)) {}

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw SzegoLabError(code, message);
}

}  // namespace szegolab
