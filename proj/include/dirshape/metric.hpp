#pragma once

#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/mask.hpp"

namespace dirshape {

/// Element of the residual rotation/reflection group acting on the theta
/// axis of a descriptor.
///
///   unreflected: out[i] = in[(i + shift) mod N]
///   reflected:   out[i] = in[(shift - i) mod N]
///
/// A grid rolled forward by k slots is brought back by shift k.
struct OrbitAlignment {
  int shift = 0;
  bool reflected = false;

  friend bool operator==(const OrbitAlignment&, const OrbitAlignment&) = default;
};

struct DescriptorDistance {
  double value = 0.0;
  OrbitAlignment alignment;
};

/// Theta index the alignment reads for output row i.
std::size_t aligned_row(const OrbitAlignment& g, std::size_t i, std::size_t n_theta);

DescriptorGrid apply_alignment(const DescriptorGrid& grid, const OrbitAlignment& g);

/// All 2N alignments in tie-break order: (shift 0, plain), (shift 0,
/// reflected), (shift 1, plain), ...
std::vector<OrbitAlignment> all_alignments(std::size_t n_theta);

/// Weights exp(-kappa * beta_j).
std::vector<double> beta_weights(const std::vector<double>& betas, double kappa);

/// sqrt(sum_ij w_j (a_ij - b_ij)^2), no alignment.
double weighted_l2(const DescriptorGrid& a, const DescriptorGrid& b, double kappa);

/// Quotient distance: minimum of the weighted L2 distance over every
/// alignment of `b`. Ties go to the first alignment in all_alignments order.
/// Throws Error(Mismatch) when the grids or config disagree.
DescriptorDistance descriptor_distance(const DescriptorGrid& a, const DescriptorGrid& b,
                                       const MetricConfig& config);

/// A pair of rasters placed on one canvas for pixel Hausdorff evaluation.
struct PlacedPair {
  BinaryMask a;
  BinaryMask b;
};

/// The sampled orbit used by hausdorff_orbit_distance: `a` and `b` are
/// normalized to `area`, then for each of `rotation_samples` angles
/// 2*pi*k/rotation_samples and each reflection flag, b is rotated about its
/// centroid and both rasters are placed with their centroids aligned to the
/// nearest pixel.
std::vector<PlacedPair> hausdorff_orbit(const BinaryMask& a, const BinaryMask& b,
                                        int rotation_samples, double area);

/// Two-sided Hausdorff distance between the foreground pixels of two masks
/// sharing a canvas, from their distance fields.
double pixel_hausdorff(const BinaryMask& a, const BinaryMask& b);

/// Upper-bound approximation of the Hausdorff shape distance: minimum of
/// pixel_hausdorff over hausdorff_orbit. Translation is fixed by centroid
/// alignment and rotation is sampled, so the true infimum can only be lower.
/// Diagnostic only; retrieval never uses it.
double hausdorff_orbit_distance(const BinaryMask& a, const BinaryMask& b, int rotation_samples,
                                double area = 4096.0);

}  // namespace dirshape
