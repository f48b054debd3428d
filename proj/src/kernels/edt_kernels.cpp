#include <algorithm>
#include <cstdint>
#include <vector>

#include <omp.h>

#include "dirshape/kernels.hpp"

namespace dirshape::kernels {

namespace {

using i64 = std::int64_t;

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Column pass: distance to the nearest foreground pixel in the same column.
void column_pass(const BinaryMask& mask, int x, i64 inf, std::span<i64> g) {
  const int w = mask.width(), h = mask.height();
  g[x] = mask.at(x, 0) ? 0 : inf;
  for (int y = 1; y < h; ++y) {
    const auto idx = static_cast<std::size_t>(y) * w + x;
    g[idx] = mask.at(x, y) ? 0 : std::min(inf, g[idx - w] + 1);
  }
  for (int y = h - 2; y >= 0; --y) {
    const auto idx = static_cast<std::size_t>(y) * w + x;
    if (g[idx + w] < g[idx]) g[idx] = g[idx + w] + 1;
  }
}

// Row pass: lower envelope of the parabolas (x - i)^2 + g(i)^2.
void row_pass(std::span<const i64> g, int y, int w, std::vector<int>& s, std::vector<i64>& t,
              std::span<i64> out) {
  const i64* gy = g.data() + static_cast<std::size_t>(y) * w;
  auto f = [gy](i64 x, i64 i) { return (x - i) * (x - i) + gy[i] * gy[i]; };
  auto sep = [gy](i64 i, i64 u) {
    return floor_div(u * u - i * i + gy[u] * gy[u] - gy[i] * gy[i], 2 * (u - i));
  };

  int q = 0;
  s[0] = 0;
  t[0] = 0;
  for (int u = 1; u < w; ++u) {
    while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
    if (q < 0) {
      q = 0;
      s[0] = u;
    } else {
      const i64 wpos = 1 + sep(s[q], u);
      if (wpos < w) {
        ++q;
        s[q] = u;
        t[q] = wpos;
      }
    }
  }
  i64* row = out.data() + static_cast<std::size_t>(y) * w;
  for (int u = w - 1; u >= 0; --u) {
    row[u] = f(u, s[q]);
    if (u == t[q]) --q;
  }
}

}  // namespace

void edt_serial(const BinaryMask& mask, std::span<std::int64_t> out) {
  const int w = mask.width(), h = mask.height();
  const i64 inf = static_cast<i64>(w) + h;
  std::vector<i64> g(mask.size());
  for (int x = 0; x < w; ++x) column_pass(mask, x, inf, g);
  std::vector<int> s(static_cast<std::size_t>(w));
  std::vector<i64> t(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) row_pass(g, y, w, s, t, out);
}

void edt_omp(const BinaryMask& mask, std::span<std::int64_t> out, int workers) {
  const int w = mask.width(), h = mask.height();
  const i64 inf = static_cast<i64>(w) + h;
  std::vector<i64> g(mask.size());
#pragma omp parallel num_threads(workers)
  {
#pragma omp for schedule(static)
    for (int x = 0; x < w; ++x) column_pass(mask, x, inf, g);

    std::vector<int> s(static_cast<std::size_t>(w));
    std::vector<i64> t(static_cast<std::size_t>(w));
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) row_pass(g, y, w, s, t, out);
  }
}

}  // namespace dirshape::kernels
