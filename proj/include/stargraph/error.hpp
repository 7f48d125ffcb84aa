#pragma once

#include <stdexcept>
#include <string>

namespace stargraph {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad length vector, empty window, ...).
class invalid_argument : public error {
 public:
  using error::error;
};

/// A numerical procedure could not deliver its postcondition
/// (bracket sign violation, merged poles, non-finite integrand).
class numerical_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace stargraph
