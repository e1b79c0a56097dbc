#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bandpredict {

enum class ErrorKind {
  parameter,          // malformed or out-of-range argument
  domain,             // mathematically outside the kernel class (|a| <= 1, ...)
  sizing,             // grid too small for a window
  degenerate_band,    // band contains no usable grid bins
  contract,           // caller used an operation outside its contract
  saturation,         // exp() would overflow the scalar type
  causality,          // causal kernel leaks mass to negative times
  insufficient_data,  // not enough history or future around the scored window
  alignment,          // mismatched time windows
  consistency,        // internal numerical self-check failed
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) fail(kind, what);
}

}  // namespace bandpredict
