#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent grammar / pair input. Carries the source
/// position when the error originates in a file.
class InputError : public Error {
 public:
  InputError(const std::string& message, std::string file = {},
             std::size_t line = 0, std::size_t column = 0);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

/// A tree, category or pair references a name the grammar does not declare.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation, e.g. generating an utterance from an ill-formed tree.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (parse count, tuple count, enumeration size) was exceeded.
/// Results are never silently truncated.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace compo
