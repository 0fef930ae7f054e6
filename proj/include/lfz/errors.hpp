#pragma once

#include <stdexcept>
#include <string>

namespace lfz {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (poles, divergent integrals, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested in a regime that cannot deliver it; the caller must dispatch.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Caller violated a precondition (jet too short, table too short, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Stored or computed data contradicts an identity it must satisfy.
class DataIntegrityError : public Error {
 public:
  using Error::Error;
};

// A zero of the traced function sits on (or numerically at) a contour.
class BoundaryZeroError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfz
