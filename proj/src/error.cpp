#include "fiberplan/error.hpp"

#include <nlohmann/json.hpp>

namespace fiberplan {

Error::Error(ErrorCategory category, std::string module, std::string kind,
             const std::string& message)
    : std::runtime_error(module + ": " + kind + ": " + message),
      category_(category),
      module_(std::move(module)),
      kind_(std::move(kind)),
      message_(message) {}

std::string Error::to_json() const {
  nlohmann::json j;
  j["module"] = module_;
  j["kind"] = kind_;
  j["message"] = message_;
  return j.dump();
}

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Validation: return 2;
    case ErrorCategory::Data: return 3;
    case ErrorCategory::Solver: return 4;
    case ErrorCategory::Io: return 5;
  }
  return 1;
}

}  // namespace fiberplan
