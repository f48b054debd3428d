#include <cstddef>
#include <exception>
#include <limits>

#include <omp.h>

#include "dirshape/kernels.hpp"

namespace dirshape::kernels {

void cells_serial(std::size_t n, const CellFn& cell, std::span<double> out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cell(i);
}

void cells_omp(std::size_t n, const CellFn& cell, std::span<double> out, int workers) {
  const auto count = static_cast<std::ptrdiff_t>(n);
  // Exceptions cannot leave the parallel region; keep the one from the lowest
  // index so the error reported matches the serial kernel.
  std::exception_ptr error;
  std::ptrdiff_t error_index = std::numeric_limits<std::ptrdiff_t>::max();
  // Cells differ in cost by roughly beta, so hand them out one at a time.
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = cell(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(dirshape_cells_error)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

void indices_serial(std::size_t n, const IndexFn& task) {
  for (std::size_t i = 0; i < n; ++i) task(i);
}

void indices_omp(std::size_t n, const IndexFn& task, int workers) {
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) task(static_cast<std::size_t>(i));
}

}  // namespace dirshape::kernels
