#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tumd {

// Error carrying a stable machine-readable code ("too_few_instances", ...)
// plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message.empty() ? code : code + ": " + message),
        code_(std::move(code)) {}

  explicit Error(std::string code) : Error(std::move(code), "") {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace tumd
