#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustlens {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that violates a documented precondition or invariant. The CLI maps
// this to exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace trustlens
