// error.hpp
// Exception hierarchy shared across the library. The CLI maps these onto
// exit codes: UsageError -> 1, DataError -> 2, NumericError -> 3.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace comptest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, flags, or configuration values.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Numerical degeneracy detected during computation.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A column whose pooled variance vanishes; carries the offending column index.
class DegenerateColumnError : public DataError {
 public:
  DegenerateColumnError(std::ptrdiff_t column, const std::string& what)
      : DataError(what), column_(column) {}

  std::ptrdiff_t column() const noexcept { return column_; }

 private:
  std::ptrdiff_t column_;
};

}  // namespace comptest
