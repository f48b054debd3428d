#include "dirshape/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dirshape/error.hpp"

namespace dirshape {

AffineMap AffineMap::inverse() const {
  const double det = determinant();
  if (!(std::abs(det) > 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "linear map is not invertible");
  }
  return {m22 / det, -m12 / det, -m21 / det, m11 / det};
}

AffineMap AffineMap::rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

AffineMap operator*(const AffineMap& a, const AffineMap& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

AffineMap make_transform(const TransformParams& params) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (!(params.beta >= 1.0) || !std::isfinite(params.beta)) {
    throw Error(ErrorKind::InvalidArgument,
                "beta must be a finite value >= 1, got " + std::to_string(params.beta));
  }
  if (!(params.theta >= -kHalfPi - 1e-12 && params.theta <= kHalfPi + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument,
                "theta must lie in [-pi/2, pi/2], got " + std::to_string(params.theta));
  }
  if (params.beta == 1.0) return AffineMap::identity();

  const double c = std::cos(params.theta), s = std::sin(params.theta);
  const double b = params.beta, ib = 1.0 / params.beta;
  const double off = (b - ib) * s * c;
  return {b * c * c + ib * s * s, off, off, b * s * s + ib * c * c};
}

namespace {

bool is_identity(const AffineMap& m) {
  return m.m11 == 1.0 && m.m12 == 0.0 && m.m21 == 0.0 && m.m22 == 1.0;
}

void check_canvas(long long w, long long h) {
  if (w > kMaxCanvas || h > kMaxCanvas) {
    throw Error(ErrorKind::CanvasTooLarge, "transformed canvas " + std::to_string(w) + "x" +
                                               std::to_string(h) + " exceeds the " +
                                               std::to_string(kMaxCanvas) + " pixel limit");
  }
}

}  // namespace

BinaryMask apply_transform(const BinaryMask& mask, const AffineMap& map, int margin,
                           double lattice_shift) {
  if (margin < 0) throw Error(ErrorKind::InvalidArgument, "margin must be non-negative");
  const PixelBox box = bounding_box(mask);
  if (box.width() <= 0) {
    throw Error(ErrorKind::EmptyForeground, "cannot transform an empty mask");
  }

  if (is_identity(map) && lattice_shift == 0.0) {
    check_canvas(box.width() + 2LL * margin, box.height() + 2LL * margin);
    return crop_to_content(mask, margin);
  }

  const AffineMap inv = map.inverse();
  const Point2 c = relative_centroid(mask, box);

  // Bilinear support of the source reaches one pixel beyond the box.
  double qx0 = 1e300, qx1 = -1e300, qy0 = 1e300, qy1 = -1e300;
  for (double cx : {-1.0, static_cast<double>(box.width())}) {
    for (double cy : {-1.0, static_cast<double>(box.height())}) {
      const Point2 q = map.apply({cx - c.x, cy - c.y});
      qx0 = std::min(qx0, q.x);
      qx1 = std::max(qx1, q.x);
      qy0 = std::min(qy0, q.y);
      qy1 = std::max(qy1, q.y);
    }
  }
  // Output pixel (ox, oy) sits at offset (ox - ox_c - fx, oy - oy_c - fy) from
  // the transformed centroid. The fractional shift keeps the output lattice
  // aligned with the source pixel lattice, so the identity samples pixel
  // centers exactly and symmetric shapes stay symmetric.
  const double fx = c.x - std::floor(c.x) + lattice_shift;
  const double fy = c.y - std::floor(c.y) + lattice_shift;
  const long long ox_c = margin + static_cast<long long>(std::ceil(-qx0 - fx));
  const long long oy_c = margin + static_cast<long long>(std::ceil(-qy0 - fy));
  const long long out_w = ox_c + static_cast<long long>(std::floor(qx1 + fx)) + 1 + margin;
  const long long out_h = oy_c + static_cast<long long>(std::floor(qy1 + fy)) + 1 + margin;
  check_canvas(out_w, out_h);

  BinaryMask out(static_cast<int>(out_w), static_cast<int>(out_h));
  for (int oy = 0; oy < out.height(); ++oy) {
    const double qy = static_cast<double>(oy - oy_c) - fy;
    for (int ox = 0; ox < out.width(); ++ox) {
      const double qx = static_cast<double>(ox - ox_c) - fx;
      const double sx = c.x + inv.m11 * qx + inv.m12 * qy;
      const double sy = c.y + inv.m21 * qx + inv.m22 * qy;
      const double gx = std::floor(sx), gy = std::floor(sy);
      const double tx = sx - gx, ty = sy - gy;
      const int ix = box.x0 + static_cast<int>(gx);
      const int iy = box.y0 + static_cast<int>(gy);
      const double p00 = mask.get(ix, iy), p10 = mask.get(ix + 1, iy);
      const double p01 = mask.get(ix, iy + 1), p11 = mask.get(ix + 1, iy + 1);
      const double v = (1.0 - ty) * ((1.0 - tx) * p00 + tx * p10) +
                       ty * ((1.0 - tx) * p01 + tx * p11);
      if (v >= 0.5) out.set(ox, oy, true);
    }
  }
  if (area(out) == 0) return out;
  return crop_to_content(out, margin);
  return out;
}

}  // namespace dirshape
