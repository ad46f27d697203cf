#include "hdfp/error.hpp"

namespace hdfp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidDimension: return "invalid-dimension";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kInvalidValue: return "invalid-value";
    case ErrorKind::kUnsupportedFeature: return "unsupported-feature";
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kValence: return "valence";
    case ErrorKind::kIndexOutOfRange: return "index-out-of-range";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyInput:
    case ErrorKind::kUnsupportedFeature:
    case ErrorKind::kSyntax:
    case ErrorKind::kValence:
    case ErrorKind::kIo:
    case ErrorKind::kInvalidValue:
      return 1;
    case ErrorKind::kInvalidDimension:
    case ErrorKind::kShape:
    case ErrorKind::kIndexOutOfRange:
    case ErrorKind::kConfig:
      return 2;
    case ErrorKind::kNumeric:
    case ErrorKind::kDegenerateInput:
      return 3;
  }
  return 1;
}

}  // namespace hdfp
