#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcm {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix entry or argument violates a domain invariant. `row`/`col` are
/// 0-based and refer to the offending entry when one exists.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t row, std::size_t col)
      : Error(what), row_(row), col_(col), has_position_(true) {}
  explicit ValidationError(const std::string& what) : Error(what) {}

  [[nodiscard]] bool has_position() const noexcept { return has_position_; }
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_ = 0;
  std::size_t col_ = 0;
  bool has_position_ = false;
};

/// Wrong number of entries supplied for the requested matrix size.
class ArityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Row/column indices out of range or not in upper-triangle order.
class IndexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed matrix text. `line`/`column` are 1-based.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : ValidationError(what), line_(line), column_(column) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Missing or inconsistent configuration, e.g. no random index for n.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Power iteration failed to reach the requested tolerance. Carries the last
/// iterate so callers can inspect how far off it was.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   double residual, std::size_t iterations)
      : Error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  [[nodiscard]] const std::vector<double>& last_iterate() const noexcept {
    return last_iterate_;
  }
  [[nodiscard]] double residual() const noexcept { return residual_; }
  [[nodiscard]] std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  std::size_t iterations_;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcm
