#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rectsurf {

enum class ErrorCode {
  kPointOnCurve,
  kNegativeWinding,
  kInvalidPoint,
  kInvalidSurface,
  kInconsistentEncoding,
  kInvalidSubUnion,
  kInvalidProbe,
  kRadiusTooLarge,
  kKTouchesBoundary,
  kPreconditionViolated,
  kNotAChain,
  kNotContainedInS,
  kMalformedInput,
};

std::string_view to_string(ErrorCode code);

// Domain failure of a library operation. The message names the violated
// invariant; the code is stable and used by the CLI for exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rectsurf
