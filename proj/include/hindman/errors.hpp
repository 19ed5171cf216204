#pragma once

#include <stdexcept>
#include <string>

namespace hindman {

// Argument outside the operation's mathematical domain (x = 0, n >= lambda(w), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource bound would be exceeded.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A recomputed claim disagrees with the value the construction produced.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hindman
