#pragma once

#include <stdexcept>
#include <string>

namespace projgap {

enum class ErrorCode {
  invalid_argument,
  format,
  domain,
  cap_exceeded,
  io,
  pole,
  degenerate,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &msg) {
  throw Error(code, msg);
}

} // namespace projgap
