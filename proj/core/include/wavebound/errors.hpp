#pragma once

#include <stdexcept>
#include <string>

namespace wavebound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inputs are valid but the asymptotic regime an approximation relies on does not hold.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// A record or grid is too short for the requested truncation or lag.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Grids that should agree do not (spacing, length, alignment).
class GridError : public DomainError {
 public:
  using DomainError::DomainError;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavebound
