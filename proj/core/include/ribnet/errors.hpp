#pragma once

#include <stdexcept>
#include <string>

namespace ribnet {

// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands belong to algebras of different dimension.
class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

// An argument has content outside the grade an operation requires.
class GradeError : public Error {
 public:
  using Error::Error;
};

// A versor whose reverse is not its inverse up to sign.
class NonUnitVersor : public Error {
 public:
  using Error::Error;
};

// Geometric input in a position the operation cannot handle: vanishing
// denominators, non-concircular quadruples, tangent or coincident circles.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

// Lattice data that violates a compatibility condition (Maurer-Cartan,
// pair conditions, multiply determined vertices that disagree).
class InconsistentData : public Error {
 public:
  using Error::Error;
};

}  // namespace ribnet
