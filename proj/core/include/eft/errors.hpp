#pragma once

#include <stdexcept>
#include <string>

namespace eft {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An input that should be symmetric (adjacency matrix, edge list) is not.
struct SymmetryError : Error {
  using Error::Error;
};

/// A value lies outside its mathematical domain (negative weight, bad index,
/// invalid cutoff, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Matrix or signal dimensions do not line up.
struct ShapeError : Error {
  using Error::Error;
};

/// A numerical routine failed to produce a usable result.
struct NumericalError : Error {
  using Error::Error;
};

/// A dense joint-graph object would exceed the configured size guard.
struct SizeGuardError : Error {
  using Error::Error;
};

/// Malformed input file. line/column are 1-based when known, -1 otherwise.
struct ParseError : Error {
  int line = -1;
  int column = -1;
  ParseError(const std::string& msg, int line_ = -1, int column_ = -1)
      : Error(msg), line(line_), column(column_) {}
};

}  // namespace eft
