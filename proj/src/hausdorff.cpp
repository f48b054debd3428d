#include <algorithm>
#include <cmath>
#include <numbers>

#include "dirshape/distance_transform.hpp"
#include "dirshape/error.hpp"
#include "dirshape/metric.hpp"
#include "dirshape/transform.hpp"

namespace dirshape {

namespace {

Point2 absolute_centroid(const BinaryMask& m) {
  const PixelBox box = bounding_box(m);
  const Point2 c = relative_centroid(m, box);
  return {box.x0 + c.x, box.y0 + c.y};
}

}  // namespace

std::vector<PlacedPair> hausdorff_orbit(const BinaryMask& a, const BinaryMask& b,
                                        int rotation_samples, double area) {
  if (rotation_samples < 4) {
    throw Error(ErrorKind::InvalidArgument, "rotation_samples must be at least 4");
  }
  constexpr int kMargin = 2;
  const BinaryMask na = normalize_area(a, area, kMargin);
  const BinaryMask nb = normalize_area(b, area, kMargin);
  const Point2 ca = absolute_centroid(na);

  std::vector<PlacedPair> out;
  out.reserve(2 * static_cast<std::size_t>(rotation_samples));
  for (int k = 0; k < rotation_samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / rotation_samples;
    const AffineMap rot = k == 0 ? AffineMap::identity() : AffineMap::rotation(angle);
    for (const bool reflected : {false, true}) {
      const AffineMap map = reflected ? rot * AffineMap::reflection_x() : rot;
      const BinaryMask wb = apply_transform(nb, map, kMargin);
      const Point2 cb = absolute_centroid(wb);
      // Place b so its centroid falls on a's, rounded to whole pixels.
      const int dx = static_cast<int>(std::lround(ca.x - cb.x));
      const int dy = static_cast<int>(std::lround(ca.y - cb.y));
      const int left = std::max(0, -dx), top = std::max(0, -dy);
      const int w = std::max(na.width() + left, wb.width() + dx + left);
      const int h = std::max(na.height() + top, wb.height() + dy + top);
      out.push_back({pad(na, left, top, w - na.width() - left, h - na.height() - top),
                     pad(wb, dx + left, dy + top, w - wb.width() - dx - left,
                         h - wb.height() - dy - top)});
    }
  }
  return out;
}

double pixel_hausdorff(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorKind::Mismatch, "pixel_hausdorff needs masks on the same canvas");
  }
  const DistanceField da = distance_transform(a);
  const DistanceField db = distance_transform(b);
  std::int64_t worst = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      if (a.at(x, y)) worst = std::max(worst, db.squared_at(x, y));
      if (b.at(x, y)) worst = std::max(worst, da.squared_at(x, y));
    }
  }
  return std::sqrt(static_cast<double>(worst));
}

double hausdorff_orbit_distance(const BinaryMask& a, const BinaryMask& b, int rotation_samples,
                                double area) {
  double best = -1.0;
  for (const PlacedPair& p : hausdorff_orbit(a, b, rotation_samples, area)) {
    const double h = pixel_hausdorff(p.a, p.b);
    if (best < 0.0 || h < best) best = h;
  }
  return best;
}

}  // namespace dirshape
