#pragma once

#include <stdexcept>
#include <string>

namespace conflictsim {

// Raised when an operation's inputs violate its preconditions. The message
// names the offending value so the CLI can print it as a one-line diagnostic.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace conflictsim
