#pragma once

#include <stdexcept>
#include <string>

namespace dirshape {

enum class ErrorKind {
  Io,
  UnsupportedFormat,
  EmptyForeground,
  Degenerate,
  InsufficientMargin,
  CanvasTooLarge,
  InvalidArgument,
  Mismatch,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. The kind lets the CLI pick an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dirshape
