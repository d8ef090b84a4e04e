#pragma once

#include <stdexcept>
#include <string>

namespace fracperc {

/// Malformed or out-of-domain user input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Basic-type extraction could not single out a unique measure vector (exit code 3).
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (exit code 4).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fracperc
