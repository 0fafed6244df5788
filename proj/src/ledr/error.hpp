// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ledr {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  non_finite,
  chart_exit,
  degenerate,
  no_oracle,
  divergence,
  no_oscillation,
  validation,
  io,
  schema,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by integrators when a state leaves the connection's valid chart band.
class ChartExitError : public Error {
 public:
  ChartExitError(std::size_t step, const std::string& what)
      : Error(ErrorKind::chart_exit, what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// Structured report for recurrences that blow past the overflow guard.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, double norm, const std::string& what)
      : Error(ErrorKind::divergence, what), step_(step), norm_(norm) {}
  std::size_t step() const noexcept { return step_; }
  double norm() const noexcept { return norm_; }

 private:
  std::size_t step_;
  double norm_;
};

// Config/CSV problems; line and column are 1-based, 0 when not applicable.
class ValidationError : public Error {
 public:
  ValidationError(ErrorKind kind, std::string field, std::size_t line, std::size_t column,
                  const std::string& what)
      : Error(kind, what), field_(std::move(field)), line_(line), column_(column) {}
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ledr
