#pragma once

// Brute-force references. Deliberately naive and independent of the
// production code paths they check.

#include <cstdint>
#include <random>
#include <vector>

#include "dirshape/config.hpp"
#include "dirshape/descriptor.hpp"
#include "dirshape/image_io.hpp"
#include "dirshape/mask.hpp"

namespace dirshape::oracle {

/// Squared distance to the nearest foreground pixel by scanning every
/// foreground pixel. O(n^2).
std::vector<std::int64_t> brute_force_edt(const BinaryMask& mask);

/// max over a of min over b (and vice versa) by scanning pixel pairs.
double brute_force_hausdorff(const BinaryMask& a, const BinaryMask& b);

/// Quotient distance by explicitly rotating and reflecting the theta values
/// of `b` and re-indexing by nearest angle, then summing the weighted squares.
double brute_force_orbit_distance(const DescriptorGrid& a, const DescriptorGrid& b, double kappa);

/// Random mask where each pixel is foreground with probability `density`.
/// Guaranteed at least one foreground pixel.
BinaryMask random_mask(std::mt19937_64& rng, int width, int height, double density);

/// Random blob: union of a few random disks, connected by construction.
BinaryMask random_blob(std::mt19937_64& rng, int size);

/// Gray image of a disk with linear anti-aliasing over the boundary pixel.
GrayImage antialiased_disk(int size, double cx, double cy, double radius);

}  // namespace dirshape::oracle
