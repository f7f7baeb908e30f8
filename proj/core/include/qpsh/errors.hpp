#pragma once

#include <stdexcept>
#include <string>

namespace qpsh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input rejected by a precondition (non-Hermitian matrix, non-real form, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computation lost the structure it relies on, e.g. eigenvalues of a
/// complex embedding that no longer come in pairs.
class NumericalDegeneracy : public Error {
 public:
  using Error::Error;
};

class NodeCapExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedBackend : public Error {
 public:
  using Error::Error;
};

}  // namespace qpsh
