#pragma once

#include <stdexcept>
#include <string>

namespace spltest {

// Domain error with a stable machine-readable code (e.g. "SYNTAX",
// "UNKNOWN_FEATURE", "NO_SUCH_PATH"). Codes are part of the public contract.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace spltest
