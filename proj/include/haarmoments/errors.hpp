#pragma once

#include <stdexcept>
#include <string>

namespace haarmoments {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix or bipartite dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A scalar argument is outside its documented range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The Weingarten function does not exist: d < m.
class SingularWeingarten : public Error {
 public:
  using Error::Error;
};

// Time-dependent coefficients are undefined for d in {1, 3}.
class SingularDimension : public Error {
 public:
  using Error::Error;
};

// A variance came out clearly negative. Signals a broken formula, never roundoff.
class NegativeVariance : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

// Input is not a density matrix (Hermitian, unit trace, positive semidefinite).
class InvalidState : public Error {
 public:
  using Error::Error;
};

}  // namespace haarmoments
