#pragma once

#include <stdexcept>
#include <string>

namespace ted {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (bad token, bad line shape). Carries the 1-based line number.
struct ParseError : Error {
  int line;
  ParseError(int line_no, const std::string& what)
      : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

/// Well-formed text describing an invalid graph (dangling vertex, duplicate
/// edge, self-loop, disconnected graph, ...).
struct StructuralError : Error {
  using Error::Error;
};

/// File could not be opened or read.
struct IoError : Error {
  using Error::Error;
};

/// Invalid parameter value (alpha out of range, k < 1, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// A resource guard tripped (embedding enumeration, candidate pool size).
struct ResourceError : Error {
  using Error::Error;
};

/// A hard capacity was exceeded (exact-search caps, full index insert).
struct CapacityError : Error {
  using Error::Error;
};

/// API misuse: duplicate insert, delete of an absent pattern, query on an
/// empty index, extension of a max-size pattern.
struct StateError : Error {
  using Error::Error;
};

/// The configured wall-clock limit expired mid-run.
struct TimeLimitError : Error {
  using Error::Error;
};

}  // namespace ted
