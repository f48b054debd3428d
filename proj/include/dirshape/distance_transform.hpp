#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "dirshape/mask.hpp"
#include "dirshape/parallel.hpp"

namespace dirshape {

/// Exact Euclidean distance from every pixel to the nearest foreground pixel,
/// stored as integer squared distances (0 on the foreground).
class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(int width, int height, std::vector<std::int64_t> squared)
      : width_(width), height_(height), squared_(std::move(squared)) {}

  int width() const { return width_; }
  int height() const { return height_; }

  std::int64_t squared_at(int x, int y) const {
    return squared_[static_cast<std::size_t>(y) * width_ + x];
  }
  double distance(int x, int y) const {
    return std::sqrt(static_cast<double>(squared_at(x, y)));
  }
  std::span<const std::int64_t> squared() const { return squared_; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::int64_t> squared_;
};

/// Separable exact EDT (Meijster et al.), linear in the pixel count.
/// Throws Error(EmptyForeground) when the mask has no foreground.
DistanceField distance_transform(const BinaryMask& mask, Exec exec = {});

}  // namespace dirshape
