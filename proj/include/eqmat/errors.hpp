#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace eqmat {

/* Base of every error the library throws. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class OverflowError : public Error {
 public:
  OverflowError() : Error("arithmetic overflow (128-bit signed budget)") {}
  explicit OverflowError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/* A caller-side contract was not met (bad parameters, unverified input). */
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/* Enumeration would exceed the configured work cap. */
class CapExceeded : public Error {
 public:
  CapExceeded(std::uint64_t required, std::uint64_t allowed)
      : Error(describe(required, allowed)), required_(required), allowed_(allowed) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  static std::string describe(std::uint64_t required, std::uint64_t allowed) {
    std::string req = required == UINT64_MAX ? std::string(">= 2^64") : std::to_string(required);
    return "enumeration cap exceeded: requires " + req + " steps, allowed " + std::to_string(allowed);
  }

  std::uint64_t required_;
  std::uint64_t allowed_;
};

class NotInImage : public Error {
 public:
  explicit NotInImage(const std::string& detail) : Error("z not in image: " + detail) {}
};

}  // namespace eqmat
