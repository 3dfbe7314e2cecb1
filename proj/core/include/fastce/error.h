#ifndef FASTCE_ERROR_H_
#define FASTCE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fastce {

enum class ErrorCode {
  kEncoding,
  kInvariantViolation,
  kInsufficientCorpus,
  kCrossSiteCorpus,
  kEmptyTemplate,
  kUnsupportedVersion,
  kParse,
  kConfigMismatch,
  kUndefinedRecall,
  kEmptyCorpus,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as fastce::Error. The code lets callers
// (and the CLI) tell apart the failing stage without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fastce

#endif  // FASTCE_ERROR_H_
