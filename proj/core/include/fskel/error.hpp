#pragma once

#include <stdexcept>
#include <string>

namespace fskel {

// Raised on malformed specs, violated preconditions, and configuration
// problems. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fskel
