#pragma once

namespace dirshape {

/// Worker budget handed down from the CLI. workers <= 1 selects the serial
/// kernels; anything larger runs the OpenMP kernels with that many threads.
/// Both paths produce bitwise identical results.
struct Exec {
  int workers = 1;

  bool parallel() const { return workers > 1; }

  static Exec serial() { return Exec{1}; }
};

}  // namespace dirshape
