#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specpath {

// Error taxonomy mirrors the CLI exit codes: input/graph problems map to
// exit 2, solver/convergence problems to exit 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Bad vertex ids, disconnected input, out-of-range pins.
class GraphError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Positivity or descent-certificate violation in a computed landscape.
class LandscapeError : public Error {
 public:
  using Error::Error;
};

// Greedy descent found no strictly smaller neighbor (must not happen on a
// valid landscape) or overran the step cap.
class DescentError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace specpath
