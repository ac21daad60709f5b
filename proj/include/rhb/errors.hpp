#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rhb {

// Non-finite function value or gradient returned by a problem oracle.
struct OracleFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct DimensionTooLarge : std::length_error {
  using std::length_error::length_error;
};

// Raised by file readers; `line` is 1-based, 0 when not tied to a line.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what), line(line) {}
  std::size_t line;
};

struct EmptyFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedTrace : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rhb
