#include "fastce/error.h"

namespace fastce {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEncoding:
      return "encoding";
    case ErrorCode::kInvariantViolation:
      return "invariant-violation";
    case ErrorCode::kInsufficientCorpus:
      return "insufficient-corpus";
    case ErrorCode::kCrossSiteCorpus:
      return "cross-site-corpus";
    case ErrorCode::kEmptyTemplate:
      return "empty-template";
    case ErrorCode::kUnsupportedVersion:
      return "unsupported-version";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kConfigMismatch:
      return "config-mismatch";
    case ErrorCode::kUndefinedRecall:
      return "undefined-recall";
    case ErrorCode::kEmptyCorpus:
      return "empty-corpus";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
  }
  return "unknown";
}

}  // namespace fastce
