#pragma once

#include <stdexcept>
#include <string>

namespace oracleopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LpInfeasible : public Error {
 public:
  LpInfeasible() : Error("linear program is infeasible") {}
};

class LpUnbounded : public Error {
 public:
  LpUnbounded() : Error("linear program is unbounded") {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace oracleopt
