#pragma once

#include <stdexcept>
#include <string>

namespace fraudscope {

/// Raised when input data cannot support the requested computation
/// (unreadable files, malformed tables, classes too small to test or split).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or command-line input.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fraudscope
