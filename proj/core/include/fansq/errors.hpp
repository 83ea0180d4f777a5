#pragma once

#include <stdexcept>
#include <string>

namespace fansq {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The trapped-ion nonlinearity hits a zero of L_n^0(eta^2); the state is undefined there.
class SingularNonlinearity : public Error {
 public:
  SingularNonlinearity(int level, double laguerre_value)
      : Error("singular nonlinearity at level " + std::to_string(level) +
              ": |L^0| = " + std::to_string(laguerre_value) + " below floor"),
        level_(level) {}

  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// A Fock-level series reached SeriesControl::n_max before its tail criterion held.
class SeriesNotConverged : public Error {
 public:
  using Error::Error;
};

/// A truncated Fock vector is too short for the requested operation.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

/// No S = 0 crossing (or no negative S) exists in a scanned region.
class EmptyBoundary : public Error {
 public:
  using Error::Error;
};

}  // namespace fansq
