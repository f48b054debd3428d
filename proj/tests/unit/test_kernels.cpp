#include <gtest/gtest.h>

#include <random>
#include <stdexcept>

#include "dirshape/kernels.hpp"
#include "oracles.hpp"

using namespace dirshape;

TEST(Kernels, EdtSerialEqualsOmp) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) {
    const BinaryMask m = oracle::random_mask(rng, 150, 97, 0.01);
    std::vector<std::int64_t> a(m.size()), b(m.size());
    kernels::edt_serial(m, a);
    kernels::edt_omp(m, b, 4);
    EXPECT_EQ(a, b);
  }
}

TEST(Kernels, CellsSerialEqualsOmp) {
  auto f = [](std::size_t i) { return std::sin(0.1 * static_cast<double>(i)) * 1e-3 + i; };
  std::vector<double> a(257), b(257);
  kernels::cells_serial(a.size(), f, a);
  kernels::cells_omp(b.size(), f, b, 5);
  EXPECT_EQ(a, b);
}

TEST(Kernels, CellsRethrowLowestIndex) {
  auto f = [](std::size_t i) -> double {
    if (i == 7 || i == 30) throw std::runtime_error("cell " + std::to_string(i));
    return 0.0;
  };
  std::vector<double> out(40);
  try {
    kernels::cells_omp(out.size(), f, out, 4);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "cell 7");
  }
}

TEST(Kernels, PairwiseSerialEqualsOmp) {
  auto f = [](std::size_t i, std::size_t j) { return 1.0 / (1.0 + i * 3.0 + j); };
  const std::size_t n = 23;
  std::vector<double> a(n * n, -1), b(n * n, -1);
  kernels::pairwise_serial(n, f, a);
  kernels::pairwise_omp(n, f, b, 3);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(a[i * n + i], 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      EXPECT_EQ(a[i * n + j], f(i, j));
      EXPECT_EQ(a[j * n + i], f(i, j));
    }
  }
}

TEST(Kernels, IndicesCoverEveryIndexOnce) {
  std::vector<int> hits(101, 0);
  kernels::indices_omp(hits.size(), [&](std::size_t i) { ++hits[i]; }, 4);
  for (int h : hits) EXPECT_EQ(h, 1);
}
