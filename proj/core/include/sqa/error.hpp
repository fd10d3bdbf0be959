#pragma once

#include <stdexcept>
#include <string>

namespace sqa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input (fact files, lexicons, queries, configs).
struct ParseError : Error {
  ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}
  int line;
};

struct UnknownEntityError : Error {
  explicit UnknownEntityError(const std::string& id)
      : Error("unknown entity: " + id) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace sqa
