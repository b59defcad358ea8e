#include "digitlaw/error.hpp"

namespace digitlaw {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain error";
    case ErrorKind::kPrecision: return "precision error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kResource: return "resource error";
    case ErrorKind::kNumeric: return "numeric error";
    case ErrorKind::kContract: return "contract violation";
    case ErrorKind::kUsage: return "usage error";
    case ErrorKind::kMissingData: return "missing data";
  }
  return "error";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
    case ErrorKind::kDomain:
    case ErrorKind::kPrecision:
    case ErrorKind::kParse:
      return 2;
    case ErrorKind::kMissingData:
      return 3;
    case ErrorKind::kNumeric:
    case ErrorKind::kResource:
    case ErrorKind::kContract:
      return 4;
  }
  return 4;
}

}  // namespace digitlaw
