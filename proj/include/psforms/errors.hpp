#pragma once

#include <stdexcept>
#include <string>

namespace psforms {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad file contents, unknown vertex names, bad rationals.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace psforms
