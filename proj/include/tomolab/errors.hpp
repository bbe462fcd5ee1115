#pragma once

#include <stdexcept>
#include <string>

namespace tomolab {

// Violation of a reconstruction bound (ordering parameter, detection
// efficiency, aliasing limit). The CLI maps this to exit code 2.
class bound_error : public std::domain_error {
 public:
  explicit bound_error(const std::string& what) : std::domain_error(what) {}
};

// Dataset / file format problems. The CLI maps this to exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tomolab
