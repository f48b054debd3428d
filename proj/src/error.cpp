#include "dirshape/error.hpp"

namespace dirshape {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::UnsupportedFormat: return "unsupported-format";
    case ErrorKind::EmptyForeground: return "empty-foreground";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::InsufficientMargin: return "insufficient-margin";
    case ErrorKind::CanvasTooLarge: return "canvas-too-large";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Mismatch: return "mismatch";
  }
  return "unknown";
}

}  // namespace dirshape
