#pragma once

#include <stdexcept>
#include <string>

namespace codemix {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is missing, unreadable or malformed (CSV, fixtures, vocabularies).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An experiment configuration file or flag is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace codemix
