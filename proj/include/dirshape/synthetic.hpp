#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dirshape/mask.hpp"

namespace dirshape::synthetic {

// Analytic shapes rasterized by testing pixel centers, each on a canvas with
// `margin` background pixels around the shape.

BinaryMask disk(double radius, int margin = 4);
BinaryMask ellipse(double semi_x, double semi_y, int margin = 4);
BinaryMask rectangle(int width, int height, int margin = 4);
BinaryMask square(int side, int margin = 4);
/// Plus sign: two bars of the given length and thickness crossing at their centers.
BinaryMask cross(int length, int thickness, int margin = 4);
/// Elliptical annulus; hole-filled it becomes the outer ellipse.
BinaryMask ring(double semi_x, double semi_y, double hole_radius, int margin = 4);
/// Square outline of the given side and stroke width.
BinaryMask square_ring(int side, int stroke, int margin = 4);
/// Palm with `fingers` parallel fingers pointing towards -y (the image top),
/// so the finger axis is the y axis.
BinaryMask hand(int fingers = 5, int finger_length = 80, int finger_width = 6, int gap = 3,
                int palm_height = 45, int margin = 4);

struct LabeledShape {
  std::string id;
  std::string label;
  BinaryMask mask;
};

/// Five classes (disk, square, rect, cross, ring) with three sizes each.
std::vector<LabeledShape> toy_corpus();

/// Three disks and three squares of varied sizes.
std::vector<LabeledShape> disk_square_corpus();

/// Writes shapes as <root>/<label>/<id>.pgm.
void write_corpus(const std::vector<LabeledShape>& shapes, const std::filesystem::path& root);

}  // namespace dirshape::synthetic
