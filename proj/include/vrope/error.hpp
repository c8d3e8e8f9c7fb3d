#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vrope {

/// Base for every error raised by the library. Callers that only need to
/// distinguish "bad input" from "I/O failure" can catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidCoordinate : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed layout spec or CSV. `offset`/`length` locate the offending span
/// in the input text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t length)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset), length_(length) {}

  std::size_t offset() const noexcept { return offset_; }
  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t offset_;
  std::size_t length_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace vrope
