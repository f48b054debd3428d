#include "dirshape/mask.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "dirshape/distance_transform.hpp"
#include "dirshape/error.hpp"
#include "dirshape/transform.hpp"

namespace dirshape {

BinaryMask::BinaryMask(int width, int height)
    : BinaryMask(width, height,
                 std::vector<std::uint8_t>(
                     static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), 0)) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::InvalidArgument, "mask dimensions must be positive");
  }
  if (bits_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorKind::InvalidArgument, "mask bit count does not match dimensions");
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

long long area(const BinaryMask& mask) {
  long long n = 0;
  for (auto b : mask.bits()) n += b;
  return n;
}

PixelBox bounding_box(const BinaryMask& mask) {
  PixelBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) return PixelBox{};
  return box;
}

Point2 relative_centroid(const BinaryMask& mask, const PixelBox& box) {
  long long sx = 0, sy = 0, n = 0;
  for (int y = box.y0; y <= box.y1; ++y) {
    for (int x = box.x0; x <= box.x1; ++x) {
      if (!mask.at(x, y)) continue;
      sx += x - box.x0;
      sy += y - box.y0;
      ++n;
    }
  }
  if (n == 0) return {};
  return {static_cast<double>(sx) / static_cast<double>(n),
          static_cast<double>(sy) / static_cast<double>(n)};
}

namespace {

// Labels connected runs of pixels whose value equals `value`. Returns the
// label image (-1 for the other value) and the component count.
std::pair<std::vector<int>, int> label_components(const BinaryMask& mask, bool value,
                                                  bool eight_connected) {
  const int w = mask.width(), h = mask.height();
  std::vector<int> labels(mask.size(), -1);
  std::vector<std::pair<int, int>> stack;
  int count = 0;
  static constexpr std::array<std::pair<int, int>, 8> kOffsets{{
      {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  const std::size_t n_offsets = eight_connected ? 8 : 4;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto idx = static_cast<std::size_t>(y) * w + x;
      if (mask.at(x, y) != value || labels[idx] >= 0) continue;
      labels[idx] = count;
      stack.emplace_back(x, y);
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (std::size_t k = 0; k < n_offsets; ++k) {
          const int nx = cx + kOffsets[k].first, ny = cy + kOffsets[k].second;
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const auto nidx = static_cast<std::size_t>(ny) * w + nx;
          if (mask.at(nx, ny) != value || labels[nidx] >= 0) continue;
          labels[nidx] = count;
          stack.emplace_back(nx, ny);
        }
      }
      ++count;
    }
  }
  return {std::move(labels), count};
}

// Marks which background components touch the canvas border.
std::vector<bool> border_touching(const BinaryMask& mask, const std::vector<int>& labels,
                                  int count) {
  std::vector<bool> touches(static_cast<std::size_t>(count), false);
  const int w = mask.width(), h = mask.height();
  auto mark = [&](int x, int y) {
    const int l = labels[static_cast<std::size_t>(y) * w + x];
    if (l >= 0) touches[static_cast<std::size_t>(l)] = true;
  };
  for (int x = 0; x < w; ++x) {
    mark(x, 0);
    mark(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    mark(0, y);
    mark(w - 1, y);
  }
  return touches;
}

}  // namespace

ShapeValidation validate_shape(const BinaryMask& mask) {
  ShapeValidation v;
  v.component_count = label_components(mask, true, true).second;

  auto [bg_labels, bg_count] = label_components(mask, false, false);
  const auto touches = border_touching(mask, bg_labels, bg_count);
  for (bool t : touches) v.hole_count += t ? 0 : 1;
  for (int l : bg_labels) {
    if (l >= 0 && !touches[static_cast<std::size_t>(l)]) ++v.hole_area;
  }

  v.connected = v.component_count == 1;
  v.hole_free = v.hole_count == 0;
  return v;
}

BinaryMask fill_holes(const BinaryMask& mask) {
  auto [bg_labels, bg_count] = label_components(mask, false, false);
  const auto touches = border_touching(mask, bg_labels, bg_count);
  BinaryMask out = mask;
  auto bits = out.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const int l = bg_labels[i];
    if (l >= 0 && !touches[static_cast<std::size_t>(l)]) bits[i] = 1;
  }
  return out;
}

BinaryMask normalize_area(const BinaryMask& mask, double target_area, int margin) {
  const long long a0 = area(mask);
  if (a0 <= 0) throw Error(ErrorKind::EmptyForeground, "cannot normalize an empty mask");
  if (!(target_area > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "target area must be positive");
  }
  if (target_area < 16.0) {
    throw Error(ErrorKind::Degenerate,
                "target area " + std::to_string(target_area) + " is below 16 pixels");
  }

  // Raster area is a step function of the scale factor, so bisect on the
  // scale and keep the candidate closest to the target. Symmetric shapes keep
  // the parity of their extents on one lattice, hence the second phase.
  BinaryMask best;
  double best_err = 0.0;
  const double s0 = std::sqrt(target_area / static_cast<double>(a0));
  for (const double shift : {0.0, 0.5}) {
    auto evaluate = [&](double scale) {
      BinaryMask out = apply_transform(mask, AffineMap::scaling(scale), margin, shift);
      const auto a = static_cast<double>(area(out));
      const double err = std::abs(a - target_area) / target_area;
      if (best.empty() || err < best_err) {
        best = std::move(out);
        best_err = err;
      }
      return a;
    };
    if (evaluate(s0) == target_area) break;
    double lo = s0, hi = s0;
    for (int k = 0; k < 20 && evaluate(lo) > target_area; ++k) lo *= 0.95;
    for (int k = 0; k < 20 && evaluate(hi) < target_area; ++k) hi *= 1.05;
    for (int iter = 0; iter < 24 && best_err > 0.0; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (evaluate(mid) < target_area ? lo : hi) = mid;
    }
    if (best_err == 0.0) break;
  }
  if (area(best) < 16) {
    throw Error(ErrorKind::Degenerate, "normalized shape degenerates below 16 pixels");
  }
  return best;
}

BinaryMask rotate_mask_quarter(const BinaryMask& mask, int quarters) {
  const int q = ((quarters % 4) + 4) % 4;
  BinaryMask cur = mask;
  for (int k = 0; k < q; ++k) {
    const int w = cur.width(), h = cur.height();
    BinaryMask next(h, w);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        if (cur.at(x, y)) next.set(h - 1 - y, x, true);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

BinaryMask reflect_mask_x(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      out.set(x, mask.height() - 1 - y, mask.at(x, y));
    }
  }
  return out;
}

BinaryMask pad(const BinaryMask& mask, int left, int top, int right, int bottom) {
  if (left < 0 || top < 0 || right < 0 || bottom < 0) {
    throw Error(ErrorKind::InvalidArgument, "padding must be non-negative");
  }
  BinaryMask out(mask.width() + left + right, mask.height() + top + bottom);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) out.set(x + left, y + top, true);
    }
  }
  return out;
}

BinaryMask crop_to_content(const BinaryMask& mask, int margin) {
  const PixelBox box = bounding_box(mask);
  if (box.width() <= 0) throw Error(ErrorKind::EmptyForeground, "cannot crop an empty mask");
  BinaryMask out(box.width() + 2 * margin, box.height() + 2 * margin);
  for (int y = box.y0; y <= box.y1; ++y) {
    for (int x = box.x0; x <= box.x1; ++x) {
      if (mask.at(x, y)) out.set(x - box.x0 + margin, y - box.y0 + margin, true);
    }
  }
  return out;
}

BinaryMask dilate(const BinaryMask& mask, double radius) {
  const int grow = static_cast<int>(std::ceil(radius)) + 1;
  BinaryMask padded = pad(mask, grow, grow, grow, grow);
  const DistanceField field = distance_transform(padded);
  const double r2 = radius * radius;
  BinaryMask out(padded.width(), padded.height());
  auto bits = out.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = static_cast<double>(field.squared()[i]) <= r2 ? 1 : 0;
  }
  return out;
}

double iou(const BinaryMask& a, const BinaryMask& b) {
  const int w = std::max(a.width(), b.width()), h = std::max(a.height(), b.height());
  long long inter = 0, uni = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool pa = a.get(x, y), pb = b.get(x, y);
      inter += (pa && pb) ? 1 : 0;
      uni += (pa || pb) ? 1 : 0;
    }
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace dirshape
