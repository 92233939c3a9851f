#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcspectra {

// Input text could not be parsed; carries the 1-based source position.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::invalid_argument(what + " (line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

// Eigensolver hit the sweep cap before reaching the target residual.
class NonConvergenceError : public std::runtime_error {
  public:
    NonConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
          residual_(residual) {}

    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

// An algebraic guarantee failed to hold; indicates a bug, not bad input.
class InternalInconsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

// A matrix lacks the structure the caller asserted; names the first bad entry.
class StructureError : public std::invalid_argument {
  public:
    StructureError(const std::string& what, std::size_t row, std::size_t col)
        : std::invalid_argument(what + " at entry (" + std::to_string(row) + ", " +
                                std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

  private:
    std::size_t row_;
    std::size_t col_;
};

// Spectrum has a single cluster, so the second-largest eigenvalue is undefined.
class DegenerateSpectrumError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qcspectra
