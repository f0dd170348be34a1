#pragma once

#include <stdexcept>
#include <string>

namespace cuspcert {

// Raised when an operation would have to enumerate past its declared bound.
// Callers that have a structural fallback catch this; the CLI maps it to
// exit code 3.
struct ThresholdExceeded : std::runtime_error {
  explicit ThresholdExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cuspcert
