#ifndef LAMBERTW_ERRORS_HPP
#define LAMBERTW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lambertw {

// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the domain of the requested branch or operation.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// The working precision cannot resolve the request (e.g. the input is
// indistinguishable from a domain endpoint at its own precision).
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

// A numerical guard tripped: excluded denominator, or a monotonicity
// assertion that the underlying theorems guarantee in exact arithmetic
// failed at working precision. Raising the precision is the remedy.
struct NumericalError : Error {
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

// The a-posteriori endpoint check could not validate an enclosure even
// after the automatic precision retry.
struct CertificationError : Error {
  explicit CertificationError(const std::string& msg) : Error(msg) {}
};

// Malformed textual input (decimal strings, CLI arguments).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace lambertw

#endif  // LAMBERTW_ERRORS_HPP
