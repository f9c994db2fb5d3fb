#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shiftk {

using cplx = std::complex<double>;
using DenseVector = std::vector<cplx>;

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose lengths or dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent user input (files, parameters, literals).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Parse failure in a text file; carries the 1-based line number when known.
class FormatError : public InputError {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : InputError(line == 0 ? what : what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An object used outside its lifecycle (e.g. update after finalize).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Krylov recurrence breakdown: a vanishing inner product or collinearity factor.
class BreakdownError : public Error {
 public:
  BreakdownError(const std::string& what, std::size_t iteration, std::ptrdiff_t shift)
      : Error(what), iteration_(iteration), shift_(shift) {}
  std::size_t iteration() const noexcept { return iteration_; }
  /// Shift index at which the breakdown occurred, or -1 for the seed recurrence.
  std::ptrdiff_t shift() const noexcept { return shift_; }

 private:
  std::size_t iteration_;
  std::ptrdiff_t shift_;
};

/// Denominators below this magnitude are treated as exact zeros.
inline constexpr double kBreakdownTolerance = 1e-300;

}  // namespace shiftk
