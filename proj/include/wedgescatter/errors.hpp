#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wedgescatter {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage"; }
};

/// Argument outside the mathematical domain of an operation (E <= 0, Q(L) <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Step budget exhausted before reaching the end of the path.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, std::complex<double> furthest)
      : Error(what), furthest_(furthest) {}
  const char* kind() const noexcept override { return "integration"; }
  std::complex<double> furthest() const noexcept { return furthest_; }

 private:
  std::complex<double> furthest_;
};

class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::complex<double> where)
      : Error(what), where_(where) {}
  const char* kind() const noexcept override { return "overflow"; }
  std::complex<double> where() const noexcept { return where_; }

 private:
  std::complex<double> where_;
};

/// Contour shooting became contaminated by the dominant solution.
class InstabilityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "instability"; }
};

class RefinementError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "refinement"; }
};

class InsufficientRangeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "insufficient_range"; }
};

}  // namespace wedgescatter
