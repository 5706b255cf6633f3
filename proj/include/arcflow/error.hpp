#pragma once

#include <stdexcept>
#include <string>

namespace arcflow {

/// Exception type for all recoverable library errors (bad input, guard
/// violations, solver limits). The message is a single human-readable line.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arcflow
