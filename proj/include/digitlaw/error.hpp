#pragma once

#include <stdexcept>
#include <string>

namespace digitlaw {

enum class ErrorKind {
  kDomain,
  kPrecision,
  kParse,
  kResource,
  kNumeric,
  kContract,
  kUsage,
  kMissingData,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the CLI can map it
// onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Exit codes: 0 success, 2 usage/validation, 3 missing data, 4 numeric failure.
int exit_code_for(ErrorKind kind);

}  // namespace digitlaw
