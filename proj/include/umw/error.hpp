#pragma once

#include <stdexcept>
#include <string>

namespace umw {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input document.
class ParseError : public Error {
  public:
    using Error::Error;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class CapExceededError : public Error {
  public:
    CapExceededError(const std::string& what, long cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
    long cap() const noexcept { return cap_; }

  private:
    long cap_;
};

class UnreachableError : public Error {
  public:
    using Error::Error;
};

}  // namespace umw
