#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/mask.hpp"
#include "dirshape/parallel.hpp"

namespace dirshape {

/// Sampled dilation-ratio surface: value(i, j) is the ratio at
/// (thetas[i], betas[j]).
struct DescriptorGrid {
  std::vector<double> thetas;
  std::vector<double> betas;
  std::vector<double> values;  // row-major, thetas.size() x betas.size()
  double epsilon = 0.0;
  double area = 0.0;

  std::size_t n_theta() const { return thetas.size(); }
  std::size_t n_beta() const { return betas.size(); }
  double value(std::size_t i, std::size_t j) const { return values[i * betas.size() + j]; }
  double& value(std::size_t i, std::size_t j) { return values[i * betas.size() + j]; }

  /// Same epsilon, area and sample grids (within `tol`, relative).
  bool compatible(const DescriptorGrid& other, double tol = 1e-8) const;
};

/// |{p : 0 < dist(p, mask) <= epsilon}| / divisor, where divisor defaults to
/// the mask area. The foreground must keep ceil(epsilon) + 1 background pixels
/// from every canvas edge, otherwise Error(InsufficientMargin) is thrown.
double compute_P(const BinaryMask& mask, double epsilon, double divisor = 0.0);

/// fill_holes then normalize_area to config.area with config.margin().
BinaryMask prepare_shape(const BinaryMask& mask, const MetricConfig& config);

/// Full surface over config.thetas x config.betas. Every cell warps the
/// prepared shape with make_transform(theta, beta) and divides its
/// neighborhood area by the prepared (undeformed) area. Cells run on `exec`
/// workers; the result does not depend on the worker count.
DescriptorGrid compute_descriptor(const BinaryMask& mask, const MetricConfig& config,
                                  Exec exec = {});

/// Same as compute_descriptor but starting from an already prepared shape.
DescriptorGrid descriptor_of_prepared(const BinaryMask& prepared, const MetricConfig& config,
                                      Exec exec = {});

// Text record, one per shape:
//
//   dirshape-descriptor 1
//   id <name>                (optional)
//   epsilon <e>
//   area <V>
//   thetas <t_0> ... <t_{N-1}>
//   betas <b_0> ... <b_{M-1}>
//   values <N> <M>
//   <N lines of M values, theta-major>
//   end
//
// Numbers use `precision` significant digits (9 by default).
void write_descriptor(std::ostream& os, const DescriptorGrid& grid, const std::string& id = {},
                      int precision = 9);
std::string descriptor_to_string(const DescriptorGrid& grid, const std::string& id = {},
                                 int precision = 9);

/// Parses one record. Throws Error(UnsupportedFormat) on malformed input.
DescriptorGrid read_descriptor(std::istream& is, std::string* id = nullptr);

/// Dense surface for plotting: n_theta samples from uniform_thetas and n_beta
/// samples spread evenly over [1, beta_max]. CSV rows "theta,beta,P".
void write_dense_surface(std::ostream& os, const BinaryMask& mask, const MetricConfig& config,
                         int n_theta, int n_beta, double beta_max, Exec exec = {});

}  // namespace dirshape
