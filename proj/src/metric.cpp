#include "dirshape/metric.hpp"

#include <cmath>

#include "dirshape/error.hpp"

namespace dirshape {

std::size_t aligned_row(const OrbitAlignment& g, std::size_t i, std::size_t n_theta) {
  const auto n = static_cast<long long>(n_theta);
  const long long idx = g.reflected ? g.shift - static_cast<long long>(i)
                                    : g.shift + static_cast<long long>(i);
  return static_cast<std::size_t>(((idx % n) + n) % n);
}

DescriptorGrid apply_alignment(const DescriptorGrid& grid, const OrbitAlignment& g) {
  DescriptorGrid out = grid;
  for (std::size_t i = 0; i < grid.n_theta(); ++i) {
    const std::size_t src = aligned_row(g, i, grid.n_theta());
    for (std::size_t j = 0; j < grid.n_beta(); ++j) out.value(i, j) = grid.value(src, j);
  }
  return out;
}

std::vector<OrbitAlignment> all_alignments(std::size_t n_theta) {
  std::vector<OrbitAlignment> out;
  out.reserve(2 * n_theta);
  for (std::size_t s = 0; s < n_theta; ++s) {
    out.push_back({static_cast<int>(s), false});
    out.push_back({static_cast<int>(s), true});
  }
  return out;
}

std::vector<double> beta_weights(const std::vector<double>& betas, double kappa) {
  std::vector<double> w;
  w.reserve(betas.size());
  for (double b : betas) w.push_back(std::exp(-kappa * b));
  return w;
}

double weighted_l2(const DescriptorGrid& a, const DescriptorGrid& b, double kappa) {
  if (!a.compatible(b)) throw Error(ErrorKind::Mismatch, "descriptor grids differ");
  const auto w = beta_weights(a.betas, kappa);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.n_theta(); ++i) {
    for (std::size_t j = 0; j < a.n_beta(); ++j) {
      const double d = a.value(i, j) - b.value(i, j);
      sum += w[j] * d * d;
    }
  }
  return std::sqrt(sum);
}

DescriptorDistance descriptor_distance(const DescriptorGrid& a, const DescriptorGrid& b,
                                       const MetricConfig& config) {
  if (!a.compatible(b)) {
    throw Error(ErrorKind::Mismatch, "descriptors were computed on different grids");
  }
  MetricConfig grid_of_a = config;
  grid_of_a.thetas = a.thetas;
  grid_of_a.betas = a.betas;
  grid_of_a.epsilon = a.epsilon;
  grid_of_a.area = a.area;
  if (!config.same_grid(grid_of_a)) {
    throw Error(ErrorKind::Mismatch, "descriptors do not match the metric configuration");
  }
  if (!(config.kappa > 0.0)) throw Error(ErrorKind::InvalidArgument, "kappa must be positive");

  const std::size_t nt = a.n_theta(), nb = a.n_beta();
  const auto w = beta_weights(a.betas, config.kappa);

  DescriptorDistance best{0.0, {}};
  double best_sum = -1.0;
  for (const OrbitAlignment& g : all_alignments(nt)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t src = aligned_row(g, i, nt);
      for (std::size_t j = 0; j < nb; ++j) {
        const double d = a.value(i, j) - b.value(src, j);
        sum += w[j] * d * d;
      }
    }
    if (best_sum < 0.0 || sum < best_sum) {
      best_sum = sum;
      best.alignment = g;
    }
  }
  best.value = std::sqrt(best_sum);
  return best;
}

}  // namespace dirshape
