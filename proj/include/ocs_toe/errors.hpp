#pragma once

#include <stdexcept>
#include <string>

namespace ocs_toe {

// Shapes of two operands do not agree, or a matrix is not square.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a domain rule (symmetry, fan-out, convexity, wiring...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A flow problem or a rewiring instance admits no feasible solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive oracles refuse instances above their size guard.
class SizeGuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Serialization: malformed JSON text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serialization: well-formed JSON that does not match the documented schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ocs_toe
