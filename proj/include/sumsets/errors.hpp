#pragma once

#include <stdexcept>
#include <string>

namespace sumsets {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (empty set, h out of range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A bit-vector or enumeration would exceed its configured limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An exact integer quantity does not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Construction parameters violate the family's constraints.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

// Two independent computations disagree. Always a defect.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace sumsets
