#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oplab {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters outside the domain of an operation (a <= -1, p > q, m <= 0 in
/// Beta, an unsupported regime, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A stated precondition does not hold; the message names the inequality.
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The convergence hints of an integrand show the integral is infinite.
class DivergenceError : public Error {
 public:
  enum class Endpoint { Zero, Infinity };

  DivergenceError(const std::string& what, Endpoint where)
      : Error(what), endpoint_(where) {}

  Endpoint endpoint() const noexcept { return endpoint_; }

 private:
  Endpoint endpoint_;
};

/// Adaptive refinement ran out of budget before meeting the tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved, double requested)
      : Error(what), achieved_(achieved), requested_(requested) {}

  double achieved() const noexcept { return achieved_; }
  double requested() const noexcept { return requested_; }

 private:
  double achieved_;
  double requested_;
};

/// Expression-language errors carry the byte offset of the offending token.
class ParseError : public DomainError {
 public:
  enum class Kind { Syntax, Arity, NonConstantExponent, UnknownIdentifier };

  ParseError(const std::string& what, Kind kind, std::size_t offset)
      : DomainError(what), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// No Schur exponent witness was found on the search grid.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A certificate inequality failed numerically at a sample point.
class CertificateError : public Error {
 public:
  CertificateError(const std::string& what, std::string inequality,
                   std::size_t sample, double point, double residual)
      : Error(what),
        inequality_(std::move(inequality)),
        sample_(sample),
        point_(point),
        residual_(residual) {}

  const std::string& inequality() const noexcept { return inequality_; }
  std::size_t sample() const noexcept { return sample_; }
  double point() const noexcept { return point_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string inequality_;
  std::size_t sample_;
  double point_;
  double residual_;
};

}  // namespace oplab
