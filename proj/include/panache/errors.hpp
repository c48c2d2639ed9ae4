#pragma once

#include <stdexcept>
#include <string>

namespace panache {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit (rows/cols, block sizes, generator counts).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands live over different group presentations or different Ext spaces.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be invertible / unipotent / nilpotent is not.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

class NotUnipotentError : public Error {
 public:
  using Error::Error;
};

class NotNilpotentError : public Error {
 public:
  using Error::Error;
};

/// A linear map that should be an intertwiner is not one.
class NotMorphismError : public Error {
 public:
  using Error::Error;
};

/// Hom(N,A) or Hom(B,N) (or Hom(N,B^)) is nonzero where uniqueness needs it to vanish.
class RigidityError : public Error {
 public:
  using Error::Error;
};

/// A duality datum whose two extension classes disagree, or a non ε-symmetric φ.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// A linear system that the theory says is solvable turned out inconsistent.
class InconsistentStateError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (words, rationals, JSON instance files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace panache
