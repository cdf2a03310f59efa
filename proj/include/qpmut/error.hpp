#pragma once

#include <stdexcept>
#include <string>

namespace qpmut {

// Library-level error with a stable machine-readable code.  The CLI maps
// these onto structured JSON error reports; tests match on `code`.
class QpError : public std::runtime_error {
public:
  QpError(std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(std::move(message)) {}

  const std::string& code() const { return code_; }
  const std::string& message() const { return message_; }

private:
  std::string code_;
  std::string message_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw QpError(code, message);
}

inline void require(bool cond, const std::string& code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace qpmut
