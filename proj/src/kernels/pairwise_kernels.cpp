#include <cstddef>
#include <exception>
#include <limits>

#include <omp.h>

#include "dirshape/kernels.hpp"

namespace dirshape::kernels {

void pairwise_serial(std::size_t n, const PairFn& pair, std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pair(i, j);
      out[i * n + j] = d;
      out[j * n + i] = d;
    }
  }
}

void pairwise_omp(std::size_t n, const PairFn& pair, std::span<double> out, int workers) {
  const auto rows = static_cast<std::ptrdiff_t>(n);
  std::exception_ptr error;
  std::ptrdiff_t error_row = std::numeric_limits<std::ptrdiff_t>::max();
  // Row i holds n - 1 - i pairs; dynamic scheduling evens the load out.
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    try {
      out[i * n + i] = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = pair(i, j);
        out[i * n + j] = d;
        out[j * n + i] = d;
      }
    } catch (...) {
#pragma omp critical(dirshape_pairwise_error)
      if (ii < error_row) {
        error_row = ii;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace dirshape::kernels
