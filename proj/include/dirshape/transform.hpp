#pragma once

#include "dirshape/mask.hpp"

namespace dirshape {

struct TransformParams {
  double theta = 0.0;  // radians, [-pi/2, pi/2]
  double beta = 1.0;   // >= 1
};

/// 2x2 linear map [[m11, m12], [m21, m22]] acting on (x, y).
struct AffineMap {
  double m11 = 1.0, m12 = 0.0;
  double m21 = 0.0, m22 = 1.0;

  double determinant() const { return m11 * m22 - m12 * m21; }
  AffineMap inverse() const;
  Point2 apply(Point2 p) const { return {m11 * p.x + m12 * p.y, m21 * p.x + m22 * p.y}; }

  static AffineMap identity() { return {}; }
  static AffineMap scaling(double s) { return {s, 0.0, 0.0, s}; }
  static AffineMap rotation(double angle);
  /// (x, y) -> (x, -y)
  static AffineMap reflection_x() { return {1.0, 0.0, 0.0, -1.0}; }
};

AffineMap operator*(const AffineMap& a, const AffineMap& b);

inline constexpr int kMaxCanvas = 8192;

/// Symmetric, unit-determinant map stretching by beta along direction theta
/// and shrinking by 1/beta along theta + pi/2. Throws for beta < 1 or theta
/// outside [-pi/2, pi/2].
AffineMap make_transform(const TransformParams& params);

/// Pull-back warp about the mask centroid. Each output pixel center is mapped
/// through map^-1 into the source, sampled bilinearly and thresholded at 0.5.
/// The output lattice keeps the centroid's offset from the source pixel grid,
/// and the result is cropped to the foreground plus `margin` on every side.
/// `lattice_shift` moves the output lattice by that many pixels along both
/// axes (normalize_area tries 0 and 0.5).
///
/// Throws Error(CanvasTooLarge) when the canvas would exceed kMaxCanvas.
BinaryMask apply_transform(const BinaryMask& mask, const AffineMap& map, int margin,
                           double lattice_shift = 0.0);

}  // namespace dirshape
