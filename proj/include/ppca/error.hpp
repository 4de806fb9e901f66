#pragma once

#include <stdexcept>
#include <string>

namespace ppca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidNeighborhood : public Error {
 public:
  using Error::Error;
};

/// A site index outside the lattice it was applied to.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// A finite window is too narrow for the evolution cone of a queried site.
class ConeViolation : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact computation was asked for an instance beyond its enumeration guard.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ppca
