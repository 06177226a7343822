#pragma once

#include <stdexcept>
#include <string>

namespace colorenz {

// Invalid arguments, shapes or options supplied by the caller.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or unusable data (non-finite entries, size mismatches, nonpositive means).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical construction that is undefined for the given input,
// e.g. a Moreau extension requested with a zero regularization scale.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace colorenz
