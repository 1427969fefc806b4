#pragma once

#include <stdexcept>
#include <string>

namespace fiberplan {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorCategory {
  Validation,  // bad configuration or parameters (exit 2)
  Data,        // malformed or inconsistent input data (exit 3)
  Solver,      // graph/solver preconditions violated (exit 4)
  Io,          // filesystem failures (exit 5)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string module, std::string kind,
        const std::string& message);

  ErrorCategory category() const noexcept { return category_; }
  const std::string& module() const noexcept { return module_; }
  // Stable identifier such as "DuplicateId" or "DisconnectedGraph".
  const std::string& kind() const noexcept { return kind_; }
  // The message without the module and kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

  // {"module":...,"kind":...,"message":...} on a single line.
  std::string to_json() const;

 private:
  ErrorCategory category_;
  std::string module_;
  std::string kind_;
  std::string message_;
};

int exit_code(ErrorCategory category) noexcept;

}  // namespace fiberplan
