#pragma once

#include <stdexcept>
#include <string>

namespace relhh {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A linear map does not carry one relation subspace into the other, so it
/// does not descend to the quotients.
class WellDefinednessViolation : public Error {
 public:
  using Error::Error;
};

class NotAssociative : public Error {
 public:
  NotAssociative(int i, int j, int k)
      : Error("multiplication is not associative on basis triple (" + std::to_string(i) + ", " +
              std::to_string(j) + ", " + std::to_string(k) + ")"),
        i(i), j(j), k(k) {}
  int i, j, k;
};

class NotUnital : public Error {
 public:
  explicit NotUnital(int basis_index)
      : Error("declared unit is not a two-sided identity on basis element " +
              std::to_string(basis_index)),
        witness(basis_index) {}
  int witness;
};

class InfiniteDimensional : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  NotClosed(int i, int j)
      : Error("subspace is not closed under multiplication: product of generators " +
              std::to_string(i) + " and " + std::to_string(j) + " leaves it"),
        i(i), j(j) {}
  int i, j;
};

class UnitNotContained : public Error {
 public:
  UnitNotContained() : Error("the unit of the ambient algebra is not in the subalgebra") {}
};

class InvalidBimodule : public Error {
 public:
  using Error::Error;
};

class DegreeOutOfRange : public Error {
 public:
  using Error::Error;
};

/// d∘d != 0, a chain map square fails, or a similar structural invariant breaks.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotSubcomplex : public Error {
 public:
  NotSubcomplex(int degree, int vector_index, const std::string& what)
      : Error("not a subcomplex in degree " + std::to_string(degree) + " (vector " +
              std::to_string(vector_index) + "): " + what),
        degree(degree), vector_index(vector_index) {}
  int degree, vector_index;
};

class NotASection : public Error {
 public:
  NotASection() : Error("the proposed map is not a section of the projection A -> A/B") {}
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

class DegreeBoundTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace relhh
