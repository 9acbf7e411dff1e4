#pragma once

#include <stdexcept>
#include <string>

namespace delcode {

/// A size or table cap was exceeded. The message names the cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter set violates one of its defining inequalities.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A string that should be mixed has a segment longer than the window d.
class MixednessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction step that cannot fail for valid inputs did fail.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace delcode
