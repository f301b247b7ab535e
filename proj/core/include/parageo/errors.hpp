#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parageo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the problem.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Evaluation hit a pole (denominator below the degeneracy floor).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A point outside a chart's domain box, or a chart/point mismatch.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// No admissible pivot while building an orthonormal frame.
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Map does not have the structure a computation requires.
class MapError : public Error {
 public:
  using Error::Error;
};

/// Scenario configuration violates the schema; `path()` is a JSON pointer.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace parageo
