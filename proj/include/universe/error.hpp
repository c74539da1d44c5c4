#pragma once

#include <stdexcept>
#include <string>

namespace universe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ill-formed type expression or a type-level precondition failure.
struct TypeError : Error {
  using Error::Error;
};

// Malformed textual input (types, relations, value literals, files).
struct ParseError : Error {
  using Error::Error;
};

// Runtime failure while firing a graph.
struct EvalError : Error {
  using Error::Error;
};

// Unreadable files or failed writes.
struct IoError : Error {
  using Error::Error;
};

}  // namespace universe
