#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace dirshape {

/// Rasterized silhouette, row-major, 1 = foreground.
///
/// Pixel (x, y) is column x, row y, and its center sits at the integer point
/// (x, y) of the plane. Masks are plain values; every operation below returns
/// a new mask.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height);
  BinaryMask(int width, int height, std::vector<std::uint8_t> bits);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  bool at(int x, int y) const {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  /// Out-of-canvas reads are background.
  bool get(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && at(x, y);
  }
  void set(int x, int y, bool v) {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const { return bits_; }
  std::span<std::uint8_t> bits() { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct ShapeValidation {
  bool connected = false;
  bool hole_free = false;
  int component_count = 0;
  int hole_count = 0;
  long long hole_area = 0;
};

/// Inclusive foreground bounding box. Empty masks give width() <= 0.
struct PixelBox {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

long long area(const BinaryMask& mask);
PixelBox bounding_box(const BinaryMask& mask);

/// Centroid measured from the bounding-box corner (x0, y0). Keeping it
/// relative makes everything downstream exactly invariant to integer shifts.
Point2 relative_centroid(const BinaryMask& mask, const PixelBox& box);

/// Foreground components use 8-connectivity, holes are 4-connected background
/// components that never touch the canvas border.
ShapeValidation validate_shape(const BinaryMask& mask);

BinaryMask fill_holes(const BinaryMask& mask);

/// Homothety about the centroid bringing the foreground area to `target_area`
/// (bilinear sampling, threshold 0.5). The canvas is resized to the scaled
/// shape plus `margin` background pixels on each side. The scale factor is
/// refined until the area lands within 2% of the target.
BinaryMask normalize_area(const BinaryMask& mask, double target_area, int margin);

/// Lossless rotation by quarters * 90 degrees; (x, y) -> (h-1-y, x) per quarter.
BinaryMask rotate_mask_quarter(const BinaryMask& mask, int quarters);

/// Lossless flip of the rows (reflection across a horizontal axis).
BinaryMask reflect_mask_x(const BinaryMask& mask);

/// Surrounds the canvas with extra background.
BinaryMask pad(const BinaryMask& mask, int left, int top, int right, int bottom);

/// Smallest canvas holding the foreground plus `margin` on each side.
BinaryMask crop_to_content(const BinaryMask& mask, int margin);

/// Euclidean dilation: every pixel within `radius` of the foreground.
BinaryMask dilate(const BinaryMask& mask, double radius);

/// Intersection over union of two masks placed at the same origin.
double iou(const BinaryMask& a, const BinaryMask& b);

}  // namespace dirshape
