#pragma once

#include <stdexcept>
#include <string>

namespace qgeo {

// Rejected register or vector dimension (zero, mismatched shapes).
class invalid_dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed caller input (non-monotone path, bad instance parameters, ...).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance exceeds the configured amplitude budget.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant did not hold; indicates a bug, never bad input.
class invariant_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qgeo
