#include "dirshape/synthetic.hpp"

#include <cmath>
#include <functional>

#include "dirshape/image_io.hpp"

namespace dirshape::synthetic {

namespace fs = std::filesystem;

namespace {

// Rasterizes inside(x, y) for x in [0, w), y in [0, h) with the shape offset
// by `margin`.
BinaryMask raster(int w, int h, int margin, const std::function<bool(double, double)>& inside) {
  BinaryMask m(w + 2 * margin, h + 2 * margin);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (inside(x, y)) m.set(x + margin, y + margin, true);
    }
  }
  return m;
}

}  // namespace

BinaryMask ellipse(double semi_x, double semi_y, int margin) {
  const int w = 2 * static_cast<int>(std::ceil(semi_x)) + 1;
  const int h = 2 * static_cast<int>(std::ceil(semi_y)) + 1;
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  return raster(w, h, margin, [&](double x, double y) {
    const double u = (x - cx) / semi_x, v = (y - cy) / semi_y;
    return u * u + v * v <= 1.0;
  });
}

BinaryMask disk(double radius, int margin) { return ellipse(radius, radius, margin); }

BinaryMask rectangle(int width, int height, int margin) {
  return raster(width, height, margin, [](double, double) { return true; });
}

BinaryMask square(int side, int margin) { return rectangle(side, side, margin); }

BinaryMask cross(int length, int thickness, int margin) {
  const int lo = (length - thickness) / 2, hi = lo + thickness;
  return raster(length, length, margin, [&](double x, double y) {
    return (x >= lo && x < hi) || (y >= lo && y < hi);
  });
}

BinaryMask ring(double semi_x, double semi_y, double hole_radius, int margin) {
  const int w = 2 * static_cast<int>(std::ceil(semi_x)) + 1;
  const int h = 2 * static_cast<int>(std::ceil(semi_y)) + 1;
  const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
  return raster(w, h, margin, [&](double x, double y) {
    const double u = (x - cx) / semi_x, v = (y - cy) / semi_y;
    const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
    return u * u + v * v <= 1.0 && r2 > hole_radius * hole_radius;
  });
}

BinaryMask square_ring(int side, int stroke, int margin) {
  return raster(side, side, margin, [&](double x, double y) {
    return x < stroke || y < stroke || x >= side - stroke || y >= side - stroke;
  });
}

BinaryMask hand(int fingers, int finger_length, int finger_width, int gap, int palm_height,
                int margin) {
  const int palm_width = fingers * finger_width + (fingers + 1) * gap;
  const int h = finger_length + palm_height;
  return raster(palm_width, h, margin, [&](double x, double y) {
    if (y >= finger_length) return true;
    const int xi = static_cast<int>(x);
    const int pitch = finger_width + gap;
    const int offset = xi - gap;
    return offset >= 0 && offset % pitch < finger_width && offset / pitch < fingers;
  });
}

std::vector<LabeledShape> toy_corpus() {
  std::vector<LabeledShape> out;
  out.push_back({"disk-40", "disk", disk(40)});
  out.push_back({"disk-52", "disk", disk(52)});
  out.push_back({"disk-66", "disk", disk(66)});
  out.push_back({"square-56", "square", square(56)});
  out.push_back({"square-80", "square", square(80)});
  out.push_back({"square-110", "square", square(110)});
  out.push_back({"rect-120x40", "rect", rectangle(120, 40)});
  out.push_back({"rect-150x50", "rect", rectangle(150, 50)});
  out.push_back({"rect-189x63", "rect", rectangle(189, 63)});
  out.push_back({"cross-100x32", "cross", cross(100, 32)});
  out.push_back({"cross-130x42", "cross", cross(130, 42)});
  out.push_back({"cross-160x52", "cross", cross(160, 52)});
  out.push_back({"ring-60x30", "ring", ring(60, 30, 14)});
  out.push_back({"ring-80x40", "ring", ring(80, 40, 18)});
  out.push_back({"ring-100x50", "ring", ring(100, 50, 24)});
  return out;
}

std::vector<LabeledShape> disk_square_corpus() {
  return {
      {"disk-18", "disk", disk(18)},     {"disk-29", "disk", disk(29)},
      {"disk-41", "disk", disk(41)},     {"square-30", "square", square(30)},
      {"square-47", "square", square(47)}, {"square-66", "square", square(66)},
  };
}

void write_corpus(const std::vector<LabeledShape>& shapes, const fs::path& root) {
  for (const auto& s : shapes) {
    fs::create_directories(root / s.label);
    write_mask_pgm(s.mask, root / s.label / (s.id + ".pgm"));
  }
}

}  // namespace dirshape::synthetic
