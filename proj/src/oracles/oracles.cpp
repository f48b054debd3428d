#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dirshape/error.hpp"

namespace dirshape::oracle {

std::vector<std::int64_t> brute_force_edt(const BinaryMask& mask) {
  std::vector<std::pair<int, int>> fg;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) fg.emplace_back(x, y);
    }
  }
  std::vector<std::int64_t> out(mask.size(), std::numeric_limits<std::int64_t>::max());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      auto& best = out[static_cast<std::size_t>(y) * mask.width() + x];
      for (auto [fx, fy] : fg) {
        const std::int64_t dx = x - fx, dy = y - fy;
        best = std::min(best, dx * dx + dy * dy);
      }
    }
  }
  return out;
}

double brute_force_hausdorff(const BinaryMask& a, const BinaryMask& b) {
  auto points = [](const BinaryMask& m) {
    std::vector<std::pair<int, int>> p;
    for (int y = 0; y < m.height(); ++y) {
      for (int x = 0; x < m.width(); ++x) {
        if (m.at(x, y)) p.emplace_back(x, y);
      }
    }
    return p;
  };
  const auto pa = points(a), pb = points(b);
  auto directed = [](const auto& from, const auto& to) {
    std::int64_t worst = 0;
    for (auto [x, y] : from) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (auto [u, v] : to) {
        const std::int64_t dx = x - u, dy = y - v;
        best = std::min(best, dx * dx + dy * dy);
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::sqrt(static_cast<double>(std::max(directed(pa, pb), directed(pb, pa))));
}

double brute_force_orbit_distance(const DescriptorGrid& a, const DescriptorGrid& b,
                                  double kappa) {
  const std::size_t n = a.thetas.size();
  const double pi = std::numbers::pi;
  // Wrap into (-pi/2, pi/2].
  auto wrap = [pi](double t) {
    while (t <= -pi / 2 + 1e-9) t += pi;
    while (t > pi / 2 + 1e-9) t -= pi;
    return t;
  };
  auto index_of = [&](double t) {
    std::size_t best = 0;
    double best_d = 1e9;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::abs(wrap(a.thetas[i] - t));
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  };

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double rot = k * pi / static_cast<double>(n);
    for (int mirror = 0; mirror < 2; ++mirror) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = mirror ? -a.thetas[i] + rot : a.thetas[i] + rot;
        const std::size_t src = index_of(wrap(t));
        for (std::size_t j = 0; j < a.betas.size(); ++j) {
          const double d = a.values[i * a.betas.size() + j] - b.values[src * a.betas.size() + j];
          sum += std::exp(-kappa * a.betas[j]) * d * d;
        }
      }
      best = std::min(best, std::sqrt(sum));
    }
  }
  return best;
}

BinaryMask random_mask(std::mt19937_64& rng, int width, int height, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(width, height);
  bool any = false;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const bool v = on(rng);
      m.set(x, y, v);
      any = any || v;
    }
  }
  if (!any) {
    std::uniform_int_distribution<int> px(0, width - 1), py(0, height - 1);
    m.set(px(rng), py(rng), true);
  }
  return m;
}

BinaryMask random_blob(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BinaryMask m(size, size);
  const double c = (size - 1) / 2.0;
  const int blobs = 2 + static_cast<int>(unit(rng) * 4);
  for (int k = 0; k < blobs; ++k) {
    // Every disk covers the center, so the union stays connected.
    const double r = size * (0.12 + 0.2 * unit(rng));
    const double ang = 2.0 * std::numbers::pi * unit(rng);
    const double off = r * 0.9 * unit(rng);
    const double bx = c + off * std::cos(ang), by = c + off * std::sin(ang);
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        if ((x - bx) * (x - bx) + (y - by) * (y - by) <= r * r) m.set(x, y, true);
      }
    }
  }
  return m;
}

GrayImage antialiased_disk(int size, double cx, double cy, double radius) {
  GrayImage img{size, size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size)};
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d = std::hypot(x - cx, y - cy);
      const double cover = std::clamp(radius + 0.5 - d, 0.0, 1.0);
      img.pixels[static_cast<std::size_t>(y) * size + x] =
          static_cast<std::uint8_t>(std::lround(255.0 * cover));
    }
  }
  return img;
}

}  // namespace dirshape::oracle
