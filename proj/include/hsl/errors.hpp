#pragma once

#include <stdexcept>
#include <string>

namespace hsl {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameter combinations where an operator or kernel constant has a zero denominator.
struct SingularParameter : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation or integration outside the admissible region (pole, non-square root, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace hsl
