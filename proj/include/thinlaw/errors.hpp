#pragma once

#include <stdexcept>
#include <string>

namespace thinlaw {

/// A parameter outside its admissible domain (negative rate, α ∉ [0,1], ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A distribution failed a class check that an operation requires as its
/// hypothesis (PB, UB, contiguous support). The message names the check.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Size limits of the desk-scale contract were exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thinlaw
