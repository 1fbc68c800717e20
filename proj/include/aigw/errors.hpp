#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aigw {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument violates an operation's precondition.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// A coupling has zero slope in its tolerance variable and cannot be inverted.
class DegenerateCoupling : public Error {
public:
  using Error::Error;
};

/// A noise curve carries the wrong physical units for the requested use.
class UnitError : public Error {
public:
  using Error::Error;
};

/// A noise curve does not cover the requested frequency grid.
class CoverageError : public Error {
public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based; 0 means the whole input.
class ParseError : public Error {
public:
  ParseError(const std::string &source, std::size_t line, const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// File-system failure, always carrying the offending path.
class IoError : public Error {
public:
  IoError(const std::string &path, const std::string &what)
      : Error(path + ": " + what), path_(path) {}
  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

/// Several independent validation failures reported together.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string> &issues() const noexcept { return issues_; }

private:
  static std::string join(const std::vector<std::string> &issues) {
    std::string out = "invalid configuration:";
    for (const auto &i : issues)
      out += "\n  - " + i;
    return out;
  }
  std::vector<std::string> issues_;
};

} // namespace aigw
