#pragma once

#include <stdexcept>
#include <string>

namespace shiftflip {

// Argument outside the domain of an operation (bad symbol, n <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition does not hold (reducible input, invalid flip, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A bounded search ran out of budget, or a horizon/size cap was hit.
class SearchBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A construction produced an object that fails its own verification.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An identity that must hold for every point failed (a bug or corrupt data).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shiftflip
