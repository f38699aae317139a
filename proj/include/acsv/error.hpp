#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acsv {

// Failure classes, distinguished so callers can map them to exit codes.
enum class ErrorKind {
  parse,       // malformed input text
  assumption,  // a hypothesis of the smooth-point analysis fails or cannot be certified
  minimality,  // no minimal critical point, or structure outside the supported case
  resource,    // a configured computation bound was exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorKind::parse, what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class AssumptionError : public Error {
 public:
  explicit AssumptionError(const std::string& what) : Error(ErrorKind::assumption, what) {}
};

class MinimalityError : public Error {
 public:
  explicit MinimalityError(const std::string& what) : Error(ErrorKind::minimality, what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

}  // namespace acsv
