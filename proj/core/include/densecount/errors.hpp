#ifndef DENSECOUNT_ERRORS_HPP
#define DENSECOUNT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace densecount {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point has fewer than k other points to measure neighbour distances to.
class InsufficientNeighbors : public Error {
 public:
  using Error::Error;
};

/// A coordinate or rectangle falls outside the grid it addresses.
class OutOfBounds : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter combination or request (fold counts, missing labels...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An aggregate was requested over an empty input.
class EmptyInput : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed text or binary input. Carries the source name, 1-based line
/// (0 for binary inputs) and the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::string field,
             const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::string source_;
  std::size_t line_;
  std::string field_;
};

/// Well-formed input that violates a domain invariant. Lists every offender.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& message, std::vector<std::string> offenders);

  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

}  // namespace densecount

#endif  // DENSECOUNT_ERRORS_HPP
