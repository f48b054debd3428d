#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an OpenMP
// variant; the two must agree bit for bit, which the tests check and the
// benchmark target times.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dirshape/mask.hpp"

namespace dirshape::kernels {

/// Squared EDT into `out` (size width*height). The mask must be nonempty.
void edt_serial(const BinaryMask& mask, std::span<std::int64_t> out);
void edt_omp(const BinaryMask& mask, std::span<std::int64_t> out, int workers);

/// Evaluates cell(i) for i in [0, n) into out[i]. Cells must be independent.
using CellFn = std::function<double(std::size_t)>;
void cells_serial(std::size_t n, const CellFn& cell, std::span<double> out);
void cells_omp(std::size_t n, const CellFn& cell, std::span<double> out, int workers);

/// Runs task(i) for i in [0, n). Tasks must not throw and must write only
/// state owned by index i.
using IndexFn = std::function<void(std::size_t)>;
void indices_serial(std::size_t n, const IndexFn& task);
void indices_omp(std::size_t n, const IndexFn& task, int workers);

/// Fills the upper triangle of an n x n row-major matrix with pair(i, j),
/// mirrors it, and zeroes the diagonal.
using PairFn = std::function<double(std::size_t, std::size_t)>;
void pairwise_serial(std::size_t n, const PairFn& pair, std::span<double> out);
void pairwise_omp(std::size_t n, const PairFn& pair, std::span<double> out, int workers);

}  // namespace dirshape::kernels
